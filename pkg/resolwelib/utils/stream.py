""" Subgraph stream files """

from collections import defaultdict
import logging
import re
from typing import Dict, Iterable, Iterator, List, Set

from ..const import ResolweConstants
from ..errors import StreamFormatError
from ..logic import Atom, SchemaSet, SubgraphDatabase

logger = logging.getLogger(__name__)

_TOKEN = r"[A-Za-z0-9_.\-]+"


class _BlockReader:
    """Collects the lines of one block at a time. Lines are matched against a
    table of patterns, a block ends at a separator line or at the end of the
    file"""

    def __init__(self, schemas: SchemaSet):
        self._schemas = schemas
        self._funcs = [
            # Match "---"
            (rf"^{re.escape(ResolweConstants.BLOCK_SEPARATOR)}$", self._re_separator),
            # Match "?hide cFriends"
            (
                rf"^{re.escape(ResolweConstants.HIDE_DIRECTIVE)}\s+(\w+)$",
                self._re_hide,
            ),
            # Match "?domain user u1 u2 u3"
            (
                rf"^{re.escape(ResolweConstants.DOMAIN_DIRECTIVE)}\s+(\w+)((?:\s+{_TOKEN})*)$",
                self._re_domain,
            ),
            # Match "friends(u1,u2)"
            (rf"^(\w+)\s*\(\s*({_TOKEN}(?:\s*,\s*{_TOKEN})*)\s*\)$", self._re_atom),
        ]
        self._reset()

    def _reset(self):
        self._atoms: List[Atom] = []
        self._hidden: Set[str] = set()
        self._domains: Dict[str, Set[str]] = defaultdict(set)
        self._content = False

    def _re_separator(self, groups):
        return True

    def _re_hide(self, groups):
        (name,) = groups
        self._hidden.add(name)
        self._content = True

    def _re_domain(self, groups):
        type_name, names = groups
        self._domains[type_name].update(names.split())
        self._content = True

    def _re_atom(self, groups):
        name, args = groups
        self._atoms.append(Atom(name, tuple(arg.strip() for arg in args.split(","))))
        self._content = True

    def feed(self, line) -> bool:
        """ Consume one stripped line, True when it closes the block """
        for pattern, func in self._funcs:
            match = re.match(pattern, line)
            if match:
                return bool(func(match.groups()))
        raise ValueError(ResolweConstants.EXCEPTION_MESSAGE_STREAM_LINE.format(line))

    @property
    def has_content(self):
        return self._content

    def build(self) -> SubgraphDatabase:
        db = SubgraphDatabase(
            self._schemas,
            self._atoms,
            constants=self._domains,
            query_predicates=self._hidden,
        )
        self._reset()
        return db


def iter_stream_lines(lines: Iterable[str], schemas: SchemaSet) -> Iterator[SubgraphDatabase]:
    """ Databases of the blocks in an iterable of stream lines """
    reader = _BlockReader(schemas)
    block = 0
    for number, raw in enumerate(lines, start=1):
        line = raw.split(ResolweConstants.COMMENT, 1)[0].strip()
        if not line:
            continue
        try:
            closed = reader.feed(line)
        except ValueError as exc:
            raise StreamFormatError(str(exc), block, number) from exc
        if closed:
            db = reader.build()
            logger.debug("Block %d: %r", block, db)
            yield db
            block += 1
    if reader.has_content:
        yield reader.build()


def read_stream(path, schemas: SchemaSet) -> Iterator[SubgraphDatabase]:
    """Lazily read the subgraphs of a stream file, holding one block in memory at
    a time. Unknown predicates and arity errors raise SchemaError"""
    with open(path, encoding=ResolweConstants.ENCODING) as f:
        yield from iter_stream_lines(f, schemas)


def format_block(db: SubgraphDatabase) -> List[str]:
    """ Lines of one block, separator included, in a stable order """
    lines = [
        f"{ResolweConstants.HIDE_DIRECTIVE} {name}" for name in sorted(db.query_predicates)
    ]
    for type_name, names in sorted(db.constants_by_type.items()):
        lines.append(
            " ".join((ResolweConstants.DOMAIN_DIRECTIVE, type_name) + tuple(names))
        )
    lines.extend(str(atom) for atom in sorted(db.atoms))
    lines.append(ResolweConstants.BLOCK_SEPARATOR)
    return lines


def write_stream(path, dbs: Iterable[SubgraphDatabase]) -> int:
    """ Write the databases as a stream file, returning the number of blocks """
    count = 0
    with open(path, "w", encoding=ResolweConstants.ENCODING, newline="\n") as f:
        for db in dbs:
            f.write("\n".join(format_block(db)))
            f.write("\n")
            count += 1
    logger.info("Wrote %d subgraphs to %s", count, path)
    return count
