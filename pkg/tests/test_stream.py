""" Stream file reading and writing """

import itertools

import pytest

from builders import schemas_of
from resolwelib import (
    Atom,
    SchemaError,
    StreamFormatError,
    SubgraphDatabase,
    read_stream,
    write_stream,
)
from resolwelib.utils import format_block, iter_stream_lines

TYPED = schemas_of(
    """
predicate link(src,dst) evidence
predicate q(dst) target
predicate tag(src) target
"""
)


def blocks(text, schemas=TYPED):
    return list(iter_stream_lines(text.splitlines(), schemas))


def test_two_blocks():
    first, second = blocks("link(a,b)\n---\nq(b)\n---\n")
    assert first.atoms == {Atom("link", ("a", "b"))}
    assert second.atoms == {Atom("q", ("b",))}


def test_block_parsing_types_constants_by_position():
    (db,) = blocks("link(a,b)\nq(b)")
    assert len(db) == 2
    assert db.domain("src") == ("a",)
    assert db.domain("dst") == ("b",)


def test_empty_block_is_an_empty_database():
    (db,) = blocks("---")
    assert len(db) == 0
    assert db.constants_by_type == {}
    assert blocks("") == []
    assert blocks("# only a comment\n\n") == []


def test_directives_and_comments():
    (db,) = blocks(
        "# header\n?hide q\nlink(a, b)  # edge\n?domain dst c d\n?domain src z\n---"
    )
    assert db.query_predicates == {"q"}
    assert db.domain("dst") == ("b", "c", "d")
    assert db.domain("src") == ("a", "z")
    assert db.query_atoms() == [Atom("q", (c,)) for c in ("b", "c", "d")]


def test_format_errors_carry_block_and_line():
    with pytest.raises(StreamFormatError) as excinfo:
        blocks("link(a,b)\n---\nq(b)\nlink(a,b\n")
    assert excinfo.value.block == 1
    assert excinfo.value.line == 4
    assert str(excinfo.value).startswith("block 1, line 4: ")


@pytest.mark.parametrize(
    "text",
    ["nope(a)\n---", "link(a)\n---", "?hide link\n---", "q(a,b)"],
)
def test_schema_errors(text):
    with pytest.raises(SchemaError):
        blocks(text)


def test_round_trip(tmp_path):
    dbs = [
        SubgraphDatabase(
            TYPED,
            [Atom("link", ("a", "b")), Atom("q", ("b",)), Atom("tag", ("a",))],
            constants={"dst": ("c",)},
            query_predicates=("q",),
        ),
        SubgraphDatabase(TYPED),
        SubgraphDatabase(TYPED, constants={"src": ("x", "y")}),
    ]
    path = tmp_path / "stream.txt"
    assert write_stream(path, dbs) == 3
    assert list(read_stream(path, TYPED)) == dbs


def test_format_block_is_stable():
    db = SubgraphDatabase(
        TYPED,
        [Atom("q", ("b",)), Atom("link", ("a", "b"))],
        constants={"dst": ("c",)},
        query_predicates=("q",),
    )
    assert format_block(db) == [
        "?hide q",
        "?domain dst b c",
        "?domain src a",
        "link(a,b)",
        "q(b)",
        "---",
    ]


def test_reading_is_lazy(tmp_path):
    path = tmp_path / "stream.txt"
    path.write_text("link(a,b)\n---\nq(b)\n---\nthis is broken\n---\n", encoding="utf-8")
    stream = read_stream(path, TYPED)
    assert len(list(itertools.islice(stream, 2))) == 2
    with pytest.raises(StreamFormatError):
        next(stream)
