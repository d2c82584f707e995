""" ResolweShell class """

from dataclasses import replace
import logging
import os

from .._version import VERSION
from ..const import ResolweConstants
from ..grammar import expand, read_grammar
from ..learning import LearnConfig, ResolweTrainer, WeightedModel
from ..logic import format_formula
from ..metrics import auc_scores, map_score
from ..selection import ResolweSelector
from .pipeline import (
    PipelineConfig,
    evaluate_model,
    prediction_lines,
    run_pipeline,
    write_evaluation,
    write_lines,
)
from .shared_command import CommandArgumentParser, ResolweCmd
from .stream import read_stream
from .synth import SynthConfig, synth_generate

logger = logging.getLogger(__name__)

_LEARN_FLAGS = (
    ("--learning-rate", "learning_rate", float),
    ("--prior-variance", "prior_variance", float),
    ("--cd-chain-length", "cd_chain_length", int),
    ("--passes", "passes", int),
)


def _parser(prog, description) -> CommandArgumentParser:
    return CommandArgumentParser(prog=prog, description=description)


def _add_learn_flags(parser, defaults=True):
    """LearnConfig flags. Without defaults an absent flag keeps the value a model
    file already carries"""
    base = LearnConfig()
    for flag, name, kind in _LEARN_FLAGS:
        parser.add_argument(
            flag, dest=name, type=kind, default=getattr(base, name) if defaults else None
        )
    parser.add_argument(
        "--seed", dest="rng_seed", type=int, default=base.rng_seed if defaults else None
    )


def _log_progress(sender, event, detail):
    """ Progress of a streaming stage, every PROGRESS_INTERVAL subgraphs """
    if detail % ResolweConstants.PROGRESS_INTERVAL == 0:
        logger.info("%s: %s %d", sender.__class__.__name__, event, detail)


def _learn_config(args, base: LearnConfig = LearnConfig()) -> LearnConfig:
    values = {
        name: getattr(args, name)
        for name in [name for _, name, _ in _LEARN_FLAGS] + ["rng_seed"]
        if getattr(args, name) is not None
    }
    return replace(base, **values)


class ResolweShell(ResolweCmd):
    """ResolweShell runs the expand, select, learn and evaluate stages on files,
    one command at a time or interactively"""

    BANNER = f"""
        resolwelib {VERSION}

        Selects first-order formulas from a grammar on a stream of subgraphs and
        learns their weights. Type help or ? to list commands.
    """

    def __init__(self, first_commands=None):
        super().__init__(first_commands)
        self.prompt = "(resolwe) "

    def do_expand(self, arg):
        """Expand a grammar into its candidate formulas :
        expand --grammar G --out DIR [--all-variants]"""
        parser = _parser("expand", "Write the candidate formulas of a grammar")
        parser.add_argument("--grammar", required=True)
        parser.add_argument("--out", required=True)
        parser.add_argument("--all-variants", action="store_true")

        def action(args):
            candidates = expand(read_grammar(args.grammar), args.all_variants)
            os.makedirs(args.out, exist_ok=True)
            write_lines(
                os.path.join(args.out, ResolweConstants.CANDIDATES_FILE),
                (format_formula(f) for f in candidates),
            )
            print(f"{len(candidates)} candidates")

        self.invoke(parser, arg, action)

    def do_select(self, arg):
        """Select formulas on the first k2 subgraphs of a stream :
        select --grammar G --stream S --out DIR [--k2 N] [--theta T]"""
        parser = _parser("select", "Select candidate formulas on a stream")
        parser.add_argument("--grammar", required=True)
        parser.add_argument("--stream", required=True)
        parser.add_argument("--out", required=True)
        parser.add_argument("--k2", type=int, default=ResolweConstants.DEFAULT_K2)
        parser.add_argument("--theta", type=float, default=ResolweConstants.DEFAULT_THETA)

        def action(args):
            grammar = read_grammar(args.grammar)
            selector = ResolweSelector(expand(grammar))
            selector.watch(_log_progress)
            selector.run(read_stream(args.stream, grammar.schemas), args.k2)
            selected = selector.select(args.theta)
            os.makedirs(args.out, exist_ok=True)
            write_lines(
                os.path.join(args.out, ResolweConstants.SELECTION_REPORT),
                selector.report_lines(args.theta),
            )
            model = WeightedModel.from_selection(grammar.schemas, selected)
            model.with_priors().write(os.path.join(args.out, ResolweConstants.MODEL_FILE))
            print(f"{len(selected)} of {len(selector.candidates)} candidates selected")

        self.invoke(parser, arg, action)

    def do_learn(self, arg):
        """Train the clause weights of a model on a stream :
        learn --model M --stream S --out DIR [--learning-rate R] [--prior-variance V]
        [--cd-chain-length L] [--passes P] [--seed N]"""
        parser = _parser("learn", "Train model weights on a stream")
        parser.add_argument("--model", required=True)
        parser.add_argument("--stream", required=True)
        parser.add_argument("--out", required=True)
        _add_learn_flags(parser, defaults=False)

        def action(args):
            model = WeightedModel.read(args.model)
            config = _learn_config(args, model.config)
            trainer = ResolweTrainer(model, config)
            trainer.watch(_log_progress)
            trainer.fit(lambda: read_stream(args.stream, model.schemas))
            os.makedirs(args.out, exist_ok=True)
            trainer.model.write(os.path.join(args.out, ResolweConstants.MODEL_FILE))
            print(f"Trained {len(trainer.model)} clauses on {trainer.subgraphs} subgraphs")

        self.invoke(parser, arg, action)

    def do_predict(self, arg):
        """Rank the hidden atoms of every ?hide subgraph :
        predict --model M --stream S --out DIR"""
        parser = _parser("predict", "Predict hidden atoms")
        parser.add_argument("--model", required=True)
        parser.add_argument("--stream", required=True)
        parser.add_argument("--out", required=True)

        def action(args):
            model = WeightedModel.read(args.model)
            rankings = evaluate_model(model, read_stream(args.stream, model.schemas))
            os.makedirs(args.out, exist_ok=True)
            write_lines(
                os.path.join(args.out, ResolweConstants.PREDICTIONS_FILE),
                prediction_lines(rankings),
            )
            print(f"{len(rankings)} subgraphs predicted")

        self.invoke(parser, arg, action)

    def do_eval(self, arg):
        """Predict and score the hidden atoms of every ?hide subgraph :
        eval --model M --stream S --out DIR"""
        parser = _parser("eval", "Evaluate a model on held-out subgraphs")
        parser.add_argument("--model", required=True)
        parser.add_argument("--stream", required=True)
        parser.add_argument("--out", required=True)

        def action(args):
            model = WeightedModel.read(args.model)
            rankings = evaluate_model(model, read_stream(args.stream, model.schemas))
            os.makedirs(args.out, exist_ok=True)
            write_evaluation(args.out, rankings)
            rank_auc, auc = auc_scores(rankings)
            print(f"MAP {map_score(rankings):.4f} AUC {auc:.4f} rank AUC {rank_auc:.4f}")

        self.invoke(parser, arg, action)

    def do_synth(self, arg):
        """Generate a synthetic stream and its manifest :
        synth --config C.json --out DIR [--seed N] [--subgraphs N]"""
        parser = _parser("synth", "Generate a synthetic stream")
        parser.add_argument("--config", required=True)
        parser.add_argument("--out", required=True)
        parser.add_argument("--seed", type=int)
        parser.add_argument("--subgraphs", type=int)

        def action(args):
            cfg = SynthConfig.from_json(args.config)
            overrides = {
                key: value
                for key, value in (("seed", args.seed), ("subgraphs", args.subgraphs))
                if value is not None
            }
            if overrides:
                cfg = replace(cfg, **overrides)
            stream_path, manifest_path = synth_generate(cfg, args.out)
            print(f"Wrote {stream_path} and {manifest_path}")

        self.invoke(parser, arg, action)

    def do_pipeline(self, arg):
        """Run expansion, selection and training end to end :
        pipeline --grammar G --stream S --out DIR [--test-stream T] [--k2 N]
        [--theta T] [--mode resolwe|skipSelection] [--seed N] [learning flags]"""
        parser = _parser("pipeline", "Run the three stage pipeline")
        parser.add_argument("--grammar", required=True)
        parser.add_argument("--stream", required=True)
        parser.add_argument("--out", required=True)
        parser.add_argument("--test-stream")
        parser.add_argument("--k2", type=int, default=ResolweConstants.DEFAULT_K2)
        parser.add_argument("--theta", type=float, default=ResolweConstants.DEFAULT_THETA)
        parser.add_argument(
            "--mode",
            choices=ResolweConstants.MODES,
            default=ResolweConstants.MODE_RESOLWE,
        )
        _add_learn_flags(parser)

        def action(args):
            cfg = PipelineConfig(
                grammar_path=args.grammar,
                stream_path=args.stream,
                output_dir=args.out,
                k2=args.k2,
                theta=args.theta,
                mode=args.mode,
                learn=_learn_config(args),
                rng_seed=args.rng_seed,
                test_stream_path=args.test_stream,
            )
            result = run_pipeline(cfg, observer=_log_progress)
            print(
                f"{cfg.mode}: {result.candidates} candidates, {len(result.model)}"
                f" clauses, {result.total_seconds / 60:.4f} minutes"
            )
            if result.rankings is not None:
                rank_auc, auc = auc_scores(result.rankings)
                print(
                    f"MAP {map_score(result.rankings):.4f} AUC {auc:.4f}"
                    f" rank AUC {rank_auc:.4f}"
                )

        self.invoke(parser, arg, action)

    def do_about(self, arg):
        """Display information about this program and its library : about"""
        del arg
        print("")
        print(
            "ResolweShell: selects and weights first-order formulas over a stream of"
            " relational subgraphs"
        )
        print("Library version v{0}".format(VERSION))
