""" Weighted clause models, their configuration and their file format """

from dataclasses import asdict, dataclass, fields, replace
import logging
import math
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..const import ResolweConstants
from ..errors import GrammarError, ModelFormatError
from ..grammar import parse_formula, parse_grammar
from ..logic import (
    ConjunctiveFormula,
    Literal,
    SchemaSet,
    Variable,
    canonicalize,
    format_formula,
)
from ..selection import SelectedFormula, resolve_connectives

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LearnConfig:
    """Contrastive divergence settings. Every field is written to the model
    file"""

    learning_rate: float = ResolweConstants.DEFAULT_LEARNING_RATE
    prior_variance: float = ResolweConstants.DEFAULT_PRIOR_VARIANCE
    cd_chain_length: int = ResolweConstants.DEFAULT_CD_CHAIN_LENGTH
    passes: int = ResolweConstants.DEFAULT_PASSES
    rng_seed: int = ResolweConstants.DEFAULT_SEED

    def __post_init__(self):
        for name in ("learning_rate", "prior_variance"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValueError(
                    ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(name, value)
                )
        for name in ("cd_chain_length", "passes"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(
                    ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(name, value)
                )

    def to_text(self):
        return " ".join(f"{key}={value!r}" for key, value in asdict(self).items())

    @staticmethod
    def from_text(text: str) -> "LearnConfig":
        kinds = {item.name: type(item.default) for item in fields(LearnConfig)}
        values = {}
        for pair in text.split():
            key, _, value = pair.partition("=")
            if key not in kinds:
                raise ValueError(
                    ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(key, value)
                )
            values[key] = kinds[key](value)
        return LearnConfig(**values)


@dataclass(frozen=True)
class WeightedFormula:
    """A learnable clause. `source` is the form selection chose, which differs
    from `formula` when an implication was rewritten"""

    formula: ConjunctiveFormula
    weight: float = 0.0
    hint: str = ResolweConstants.HINT_NEUTRAL
    source: Optional[ConjunctiveFormula] = None

    def __post_init__(self):
        if self.source is None:
            object.__setattr__(self, "source", self.formula)
        if self.hint not in ResolweConstants.HINTS:
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format("hint", self.hint)
            )
        if not math.isfinite(self.weight):
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(
                    "weight", self.weight
                )
            )

    @property
    def is_prior(self):
        return self.hint == ResolweConstants.HINT_PRIOR

    def with_weight(self, weight: float) -> "WeightedFormula":
        return replace(self, weight=float(weight))

    def to_line(self):
        return "\t".join(
            (
                repr(float(self.weight)),
                self.hint,
                format_formula(self.formula),
                format_formula(self.source),
            )
        )


def prior_clause(schema) -> ConjunctiveFormula:
    """ The single positive literal clause of a target predicate """
    args = tuple(
        Variable(ResolweConstants.CANONICAL_VARIABLE.format(index), type_name)
        for index, type_name in enumerate(schema.arg_types, start=1)
    )
    return ConjunctiveFormula((Literal(schema, args),))


class WeightedModel:
    """ An ordered set of weighted clauses over one schema """

    def __init__(
        self,
        schemas: SchemaSet,
        clauses: Iterable[WeightedFormula] = (),
        config: LearnConfig = LearnConfig(),
        mode: str = ResolweConstants.MODE_RESOLWE,
    ):
        self._schemas = schemas
        self._clauses = tuple(clauses)
        self._config = config
        if mode not in ResolweConstants.MODES:
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format("mode", mode)
            )
        self._mode = mode

    @staticmethod
    def from_selection(
        schemas: SchemaSet,
        selected: Sequence[SelectedFormula],
        config: LearnConfig = LearnConfig(),
    ) -> "WeightedModel":
        """Zero weight clauses for the selected forms, implications rewritten to
        learnable conjunctions"""
        clauses: Dict[ConjunctiveFormula, WeightedFormula] = {}
        for sf in selected:
            resolved = resolve_connectives(sf)
            clauses.setdefault(
                resolved.formula,
                WeightedFormula(resolved.formula, 0.0, resolved.hint, sf.formula),
            )
        return WeightedModel(
            schemas, clauses.values(), config, ResolweConstants.MODE_RESOLWE
        )

    @staticmethod
    def from_candidates(
        schemas: SchemaSet,
        candidates: Iterable[ConjunctiveFormula],
        config: LearnConfig = LearnConfig(),
    ) -> "WeightedModel":
        """ Zero weight clauses for every candidate, as trained without selection """
        return WeightedModel(
            schemas,
            (WeightedFormula(f) for f in dict.fromkeys(candidates)),
            config,
            ResolweConstants.MODE_SKIP_SELECTION,
        )

    @property
    def schemas(self) -> SchemaSet:
        return self._schemas

    @property
    def clauses(self):
        return self._clauses

    @property
    def formulas(self) -> List[ConjunctiveFormula]:
        return [clause.formula for clause in self._clauses]

    @property
    def sources(self) -> List[ConjunctiveFormula]:
        """ Selected forms of the learnable clauses, prior clauses excluded """
        return [clause.source for clause in self._clauses if not clause.is_prior]

    @property
    def weights(self) -> np.ndarray:
        return np.array([clause.weight for clause in self._clauses], dtype=float)

    @property
    def config(self) -> LearnConfig:
        return self._config

    @property
    def mode(self):
        return self._mode

    def with_priors(self) -> "WeightedModel":
        """Add the single literal clause of every target predicate that lacks one.
        A learnable clause that already is that literal becomes the prior clause"""
        clauses = list(self._clauses)
        for schema in self._schemas.targets:
            prior = canonicalize(prior_clause(schema))
            existing = [i for i, clause in enumerate(clauses) if clause.formula == prior]
            if existing:
                index = existing[0]
                clauses[index] = replace(clauses[index], hint=ResolweConstants.HINT_PRIOR)
            else:
                clauses.append(
                    WeightedFormula(prior, 0.0, ResolweConstants.HINT_PRIOR, prior)
                )
        return WeightedModel(self._schemas, clauses, self._config, self._mode)

    def with_weights(self, weights: Sequence[float]) -> "WeightedModel":
        weights = list(weights)
        if len(weights) != len(self._clauses):
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format(
                    "weights", len(weights)
                )
            )
        return WeightedModel(
            self._schemas,
            (clause.with_weight(w) for clause, w in zip(self._clauses, weights)),
            self._config,
            self._mode,
        )

    def with_config(self, config: LearnConfig) -> "WeightedModel":
        return WeightedModel(self._schemas, self._clauses, config, self._mode)

    def to_text(self) -> str:
        lines = [
            ResolweConstants.MODEL_MAGIC,
            f"# {ResolweConstants.MODEL_SCHEMA_KEY} {self._schemas.digest()}",
            f"# {ResolweConstants.MODEL_MODE_KEY} {self._mode}",
            f"# {ResolweConstants.MODEL_CONFIG_KEY} {self._config.to_text()}",
        ]
        lines.extend(self._schemas.declarations())
        lines.extend(clause.to_line() for clause in self._clauses)
        return "\n".join(lines) + "\n"

    def write(self, path):
        with open(path, "w", encoding=ResolweConstants.ENCODING, newline="\n") as f:
            f.write(self.to_text())
        logger.info("Wrote %d clauses to %s", len(self._clauses), path)

    @staticmethod
    def from_text(text: str, schemas: Optional[SchemaSet] = None) -> "WeightedModel":
        lines = text.splitlines()
        if not lines or lines[0].strip() != ResolweConstants.MODEL_MAGIC:
            raise ModelFormatError(
                ResolweConstants.EXCEPTION_MESSAGE_MODEL_FORMAT.format(
                    lines[0] if lines else ""
                )
            )
        header: Dict[str, str] = {}
        declarations = []
        clause_lines = []
        for line in lines[1:]:
            if not line.strip():
                continue
            if line.startswith(ResolweConstants.COMMENT):
                key, _, value = line[1:].strip().partition(" ")
                header[key] = value.strip()
            elif line.startswith(ResolweConstants.KEYWORD_PREDICATE + " "):
                declarations.append(line)
            else:
                clause_lines.append(line)

        try:
            embedded = parse_grammar("\n".join(declarations)).schemas
            config = LearnConfig.from_text(
                header.get(ResolweConstants.MODEL_CONFIG_KEY, "")
            )
        except (GrammarError, ValueError) as exc:
            raise ModelFormatError(str(exc)) from exc
        digest = header.get(ResolweConstants.MODEL_SCHEMA_KEY)
        if digest != embedded.digest():
            raise ModelFormatError(
                ResolweConstants.EXCEPTION_MESSAGE_MODEL_SCHEMA.format(
                    digest, embedded.digest()
                )
            )
        if schemas is not None and schemas.digest() != digest:
            raise ModelFormatError(
                ResolweConstants.EXCEPTION_MESSAGE_MODEL_SCHEMA.format(
                    digest, schemas.digest()
                )
            )

        clauses = []
        for line in clause_lines:
            parts = line.split("\t")
            if len(parts) != 4:
                raise ModelFormatError(
                    ResolweConstants.EXCEPTION_MESSAGE_MODEL_FORMAT.format(line)
                )
            weight, hint, formula, source = parts
            try:
                clauses.append(
                    WeightedFormula(
                        parse_formula(formula, embedded),
                        float(weight),
                        hint,
                        parse_formula(source, embedded),
                    )
                )
            except (GrammarError, ValueError) as exc:
                raise ModelFormatError(
                    ResolweConstants.EXCEPTION_MESSAGE_MODEL_FORMAT.format(line)
                ) from exc
        mode = header.get(ResolweConstants.MODEL_MODE_KEY, ResolweConstants.MODE_RESOLWE)
        try:
            return WeightedModel(embedded, clauses, config, mode)
        except ValueError as exc:
            raise ModelFormatError(str(exc)) from exc

    @staticmethod
    def read(path, schemas: Optional[SchemaSet] = None) -> "WeightedModel":
        with open(path, encoding=ResolweConstants.ENCODING) as f:
            return WeightedModel.from_text(f.read(), schemas)

    def __len__(self):
        return len(self._clauses)

    def __eq__(self, other):
        if not isinstance(other, WeightedModel):
            return NotImplemented
        return (
            self._schemas == other._schemas
            and self._clauses == other._clauses
            and self._config == other._config
            and self._mode == other._mode
        )

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(mode={self._mode}, clauses={len(self._clauses)},"
            f" config={self._config})"
        )
