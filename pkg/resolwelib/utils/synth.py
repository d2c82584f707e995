""" Synthetic subgraph streams with planted rules """

from dataclasses import dataclass, field
import json
import logging
import os
from typing import Dict, Iterator, List, Mapping, Tuple

import numpy as np

from ..const import ResolweConstants
from ..errors import GrammarError
from ..grammar import parse_formula, parse_grammar
from ..logic import (
    Atom,
    ConjunctiveFormula,
    SchemaSet,
    SubgraphDatabase,
    format_formula,
    selected_bindings,
)
from .stream import write_stream

logger = logging.getLogger(__name__)


def _probability(name, value):
    if not 0.0 <= value <= 1.0:
        raise ValueError(ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(name, value))


def _parse_rules(schemas: SchemaSet, planted) -> List[Tuple[ConjunctiveFormula, float]]:
    """ Planted rules must be conjunctions with one positive target literal """
    rules = []
    for text, p in planted:
        try:
            formula = parse_formula(text, schemas)
        except GrammarError as exc:
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_SYNTH_RULE.format(text)
            ) from exc
        enforcer = formula.enforcer
        if formula.is_implication or len(enforcer) != 1 or enforcer[0].negated:
            raise ValueError(ResolweConstants.EXCEPTION_MESSAGE_SYNTH_RULE.format(text))
        rules.append((formula, p))
    return rules


@dataclass(frozen=True)
class SynthConfig:
    """Generator settings. `predicates` holds declarations in grammar syntax,
    `planted_rules` pairs formula text with the probability that a target atom
    selected by the rule is true, `densities` gives the chance that each
    grounding of an evidence predicate is true"""

    predicates: Tuple[str, ...]
    planted_rules: Tuple[Tuple[str, float], ...] = ()
    densities: Mapping[str, float] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)
    subgraphs: int = ResolweConstants.SYNTH_DEFAULT_SUBGRAPHS
    seed: int = ResolweConstants.DEFAULT_SEED
    background_rate: float = ResolweConstants.SYNTH_BACKGROUND_RATE
    hide: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "predicates", tuple(self.predicates))
        object.__setattr__(
            self,
            "planted_rules",
            tuple((text, float(p)) for text, p in self.planted_rules),
        )
        object.__setattr__(self, "hide", tuple(self.hide))
        schemas = self.schemas
        for text, p in self.planted_rules:
            _probability(text, p)
        for name, density in self.densities.items():
            if name not in schemas or schemas[name].is_target:
                raise ValueError(
                    ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(
                        "densities", name
                    )
                )
            _probability(name, density)
            if density > ResolweConstants.SYNTH_MAX_DENSITY:
                raise ValueError(
                    ResolweConstants.EXCEPTION_MESSAGE_SYNTH_DENSITY.format(
                        name, density, ResolweConstants.SYNTH_MAX_DENSITY
                    )
                )
        _probability("background_rate", self.background_rate)
        if self.background_rate > ResolweConstants.SYNTH_MAX_DENSITY:
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_SYNTH_DENSITY.format(
                    "background_rate",
                    self.background_rate,
                    ResolweConstants.SYNTH_MAX_DENSITY,
                )
            )
        for type_name, count in self.constants.items():
            if int(count) != count or count < 1:
                raise ValueError(
                    ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(
                        type_name, count
                    )
                )
        if self.subgraphs < 0:
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(
                    "subgraphs", self.subgraphs
                )
            )
        for name in self.hide:
            if name not in schemas or not schemas[name].is_target:
                raise ValueError(ResolweConstants.EXCEPTION_MESSAGE_HIDE_TARGET.format(name))
        _parse_rules(schemas, self.planted_rules)

    @property
    def schemas(self) -> SchemaSet:
        return parse_grammar("\n".join(self.predicates)).schemas

    @property
    def rules(self) -> List[Tuple[ConjunctiveFormula, float]]:
        return _parse_rules(self.schemas, self.planted_rules)

    @staticmethod
    def from_dict(values: Mapping) -> "SynthConfig":
        values = dict(values)
        values["planted_rules"] = tuple(
            (rule["formula"], rule["probability"]) if isinstance(rule, Mapping) else rule
            for rule in values.get("planted_rules", ())
        )
        return SynthConfig(**values)

    @staticmethod
    def from_json(path) -> "SynthConfig":
        with open(path, encoding=ResolweConstants.ENCODING) as f:
            return SynthConfig.from_dict(json.load(f))


def _constants(schemas: SchemaSet, counts: Mapping[str, int]) -> Dict[str, Tuple[str, ...]]:
    types = sorted(
        {type_name for schema in schemas.values() for type_name in schema.arg_types}
    )
    return {
        type_name: tuple(
            f"{type_name}{index}"
            for index in range(
                counts.get(type_name, ResolweConstants.SYNTH_DEFAULT_CONSTANTS)
            )
        )
        for type_name in types
    }


def synth_subgraph(
    cfg: SynthConfig,
    rng: np.random.Generator,
    schemas: SchemaSet,
    rules: List[Tuple[ConjunctiveFormula, float]],
) -> SubgraphDatabase:
    """One subgraph: evidence atoms at their densities, then each target atom
    true with the largest probability among the rules that select it, or with
    the background rate when none does"""
    constants = _constants(schemas, cfg.constants)
    evidence_atoms: List[Atom] = []
    empty = SubgraphDatabase(schemas, constants=constants)
    for schema in schemas.evidence:
        groundings = empty.groundings(schema.name)
        draws = rng.random(len(groundings))
        density = cfg.densities.get(schema.name, 0.0)
        evidence_atoms.extend(
            atom for atom, draw in zip(groundings, draws) if draw < density
        )
    evidence = SubgraphDatabase(schemas, evidence_atoms, constants=constants)

    chance: Dict[Atom, float] = {}
    for formula, p in rules:
        (target,) = formula.enforcer
        for binding in selected_bindings(evidence, formula):
            atom = target.ground_atom(binding)
            chance[atom] = max(chance.get(atom, 0.0), p)

    target_atoms: List[Atom] = []
    for schema in schemas.targets:
        groundings = evidence.groundings(schema.name)
        draws = rng.random(len(groundings))
        for atom, draw in zip(groundings, draws):
            if draw < chance.get(atom, cfg.background_rate):
                target_atoms.append(atom)
    return SubgraphDatabase(
        schemas,
        evidence_atoms + target_atoms,
        constants=constants,
        query_predicates=cfg.hide,
    )


def synth_stream(cfg: SynthConfig) -> Iterator[SubgraphDatabase]:
    """ The generated subgraphs, deterministic for the configured seed """
    schemas = cfg.schemas
    rules = cfg.rules
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.subgraphs):
        yield synth_subgraph(cfg, rng, schemas, rules)


def synth_manifest(cfg: SynthConfig) -> dict:
    schemas = cfg.schemas
    return {
        "seed": cfg.seed,
        "subgraphs": cfg.subgraphs,
        "background_rate": cfg.background_rate,
        "schema": schemas.digest(),
        "predicates": schemas.declarations(),
        "planted": [
            {"formula": format_formula(formula), "probability": p}
            for formula, p in cfg.rules
        ],
        "hide": list(cfg.hide),
    }


def synth_generate(cfg: SynthConfig, output_dir) -> Tuple[str, str]:
    """ Write the stream and the ground truth manifest, returning both paths """
    os.makedirs(output_dir, exist_ok=True)
    stream_path = os.path.join(output_dir, ResolweConstants.STREAM_FILE)
    manifest_path = os.path.join(output_dir, ResolweConstants.MANIFEST_FILE)
    write_stream(stream_path, synth_stream(cfg))
    with open(manifest_path, "w", encoding=ResolweConstants.ENCODING) as f:
        json.dump(synth_manifest(cfg), f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info("Generated %d subgraphs in %s", cfg.subgraphs, output_dir)
    return stream_path, manifest_path
