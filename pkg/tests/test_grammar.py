""" Grammar parsing and template expansion """

import logging

import pytest

from resolwelib import GrammarError, canonicalize, expand, format_formula, parse_grammar
from resolwelib.const import ResolweConstants

UNARY = """
predicate a(t) evidence
predicate b(t) evidence
predicate e(t) evidence
predicate e2(t,t) evidence
predicate q(t) target
predicate q1(t) target
predicate q2(t) target
"""


def texts(grammar, all_variants=False):
    return [format_formula(f) for f in expand(grammar, all_variants)]


def test_placeholder_declaration():
    grammar = parse_grammar(
        """
predicate articleEdit(article,user) evidence
predicate articleTalk(article,user) evidence
predicate modifies(article,user) target
placeholder EDIT(t1:article,u:user) := articleEdit(t1,u) | articleTalk(t1,u) [compounder max=2]
"""
    )
    definition = grammar.placeholders["EDIT"]
    assert len(definition.expansions) == 2
    assert definition.mode == ResolweConstants.PLACEHOLDER_COMPOUNDER
    assert definition.max_len == 2
    assert [param.type_name for param in definition.params] == ["article", "user"]


def test_mode_defaults():
    grammar = parse_grammar(
        UNARY
        + """
placeholder P(x:t) := a(x) | b(x)
placeholder C(x:t) := a(x) | b(x) [compounder]
"""
    )
    assert grammar.placeholders["P"].mode == ResolweConstants.PLACEHOLDER_PLAIN
    assert grammar.placeholders["P"].max_len == 1
    assert grammar.placeholders["C"].max_len == 2


def test_q_marker_template():
    grammar = parse_grammar(
        """
predicate friends(user,user) evidence
predicate sameUrl(user,user) evidence
predicate cFriends(user) target
placeholder UREL(u1:user,u2:user) := friends(u1,u2) | sameUrl(u1,u2) [extender max=2]
template UREL(u1,u2) ^ cFriends(u1) ?=> cFriends(u2)
"""
    )
    (template,) = grammar.templates
    assert template.q_marker
    assert template.consequent == 2
    assert template.line == 6


def test_empty_grammar_expands_to_nothing():
    grammar = parse_grammar(UNARY)
    assert grammar.templates == []
    assert expand(grammar) == []
    assert expand(parse_grammar("")) == []


@pytest.mark.parametrize(
    "text, line",
    [
        ("predicate a(t) evidence\nthis is not a grammar line", 2),
        ("predicate a(t) evidence\npredicate a(t) target", 2),
        ("predicate a(t) observed", 1),
        ("predicate a(t) evidence\n\ntemplate a(x) ^ zz(x)", 3),
        ("predicate a(t) evidence\npredicate u(user) target\ntemplate a(x) ^ u(x)", 3),
        (UNARY + "template e(x) ?=> q(x)", 9),
        (UNARY + "template e(x) ^ q1(x) => !q2(x)", 9),
        (UNARY + "template e(x) ^ !q(x)", 9),
        (UNARY + "placeholder T(x:t) := q(x) | !q(x)", 9),
        (UNARY + "placeholder P(x:t) := a(x) [sometimes]", 9),
        (UNARY + "placeholder X(x:t,y:t,z:t) := e2(x,y) [extender max=2]", 9),
        (UNARY + "option compound_locals = mixed", 9),
        (UNARY + "placeholder q(x:t) := a(x)", 9),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(GrammarError) as excinfo:
        parse_grammar(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}: ")


@pytest.mark.parametrize(
    "template",
    ["e(x) => q1(x) => q2(x)", "e(x) ?=> q1(x) => q2(x)", "e(x) => q1(x) ^ q2(x)"],
)
def test_one_arrow_before_the_last_literal(template):
    with pytest.raises(GrammarError, match="one implication arrow"):
        parse_grammar(UNARY + "template " + template)


def test_target_literals_are_never_negated():
    template = "template e(x) ^ q2(x) ^ T(x)\n"
    with pytest.raises(GrammarError, match="may not be negated") as excinfo:
        parse_grammar(UNARY + "placeholder T(x:t) := q(x) | !q(x)\n" + template)
    assert excinfo.value.line == 9
    grammar = UNARY + "placeholder T(x:t) := q(x) | q1(x)\n" + template
    for all_variants in (False, True):
        for f in expand(parse_grammar(grammar), all_variants):
            assert not any(lit.negated for lit in f.enforcer)


def test_comments_and_blank_lines_are_ignored():
    grammar = parse_grammar(
        "# header\n\npredicate a(t) evidence  # trailing\npredicate q(t) target\n"
        "template a(x) ^ q(x)\n"
    )
    assert texts(grammar) == ["a(v1) ^ q(v1)"]


def test_plain_placeholders_multiply():
    grammar = parse_grammar(
        """
predicate p1(t) evidence
predicate p2(t) evidence
predicate p3(t) evidence
predicate s1(t) evidence
predicate s2(t) evidence
predicate r1(t) evidence
predicate r2(t) evidence
predicate q(t) target
placeholder P(x:t) := p1(x) | p2(x) | p3(x)
placeholder S(x:t) := s1(x) | s2(x)
placeholder R(x:t) := r1(x) | r2(x)
template P(x) => q(x)
template P(x) ^ S(x) ^ q(x)
template P(x) ^ S(x) ^ R(x) ^ q(x)
"""
    )
    candidates = expand(grammar)
    assert len(candidates) == 3 + 3 * 2 + 3 * 2 * 2


def test_compounder_expansion():
    grammar = parse_grammar(
        UNARY
        + """
placeholder E1(x:t) := a(x) | b(x) [compounder max=2]
template E1(x) ^ q(x)
"""
    )
    assert texts(grammar) == [
        "a(v1) ^ b(v1) ^ q(v1)",
        "a(v1) ^ q(v1)",
        "b(v1) ^ q(v1)",
    ]


def test_extender_expansion():
    grammar = parse_grammar(
        """
predicate f(user,user) evidence
predicate s(user,user) evidence
predicate c(user) target
placeholder UREL(u1:user,u2:user) := f(u1,u2) | s(u1,u2) [extender max=2]
template UREL(u1,u2) ^ c(u2)
"""
    )
    result = texts(grammar)
    assert len(result) == 6
    singles = [text for text in result if text.count("(") == 2]
    chains = [text for text in result if text.count("(") == 3]
    assert singles == ["c(v1) ^ f(v2,v1)", "c(v1) ^ s(v2,v1)"]
    assert len(chains) == 4
    assert sum("f(" in text and "s(" in text for text in chains) == 2
    assert sum(text.count("f(") == 2 for text in chains) == 1


def test_extender_chain_links_through_fresh_variable():
    grammar = parse_grammar(
        """
predicate f(user,user) evidence
predicate c(user) target
placeholder UREL(u1:user,u2:user) := f(u1,u2) [extender max=3]
template UREL(u1,u2) ^ c(u2)
"""
    )
    candidates = expand(grammar)
    assert sorted(len(f.variables) for f in candidates) == [2, 3, 4]


def test_q_marker_variants_depend_on_mode():
    grammar = parse_grammar(UNARY + "template e(x) ^ q1(x) ?=> q2(x)\n")
    assert texts(grammar) == ["e(v1) ^ q1(v1) ^ q2(v1)"]
    assert all(f.resolvable for f in expand(grammar))
    assert sorted(texts(grammar, all_variants=True)) == [
        "e(v1) ^ q1(v1) => q2(v1)",
        "e(v1) ^ q1(v1) ^ q2(v1)",
        "e(v1) ^ q2(v1) => q1(v1)",
    ]


def test_explicit_implication_keeps_its_form():
    grammar = parse_grammar(UNARY + "template e(x) ^ q1(x) => q2(x)\n")
    for all_variants in (False, True):
        assert texts(grammar, all_variants) == ["e(v1) ^ q1(v1) => q2(v1)"]
    assert not any(f.resolvable for f in expand(grammar))


def test_explicit_conjunction_keeps_its_form():
    grammar = parse_grammar(UNARY + "template e(x) ^ q1(x) ^ q2(x)\n")
    for all_variants in (False, True):
        assert texts(grammar, all_variants) == ["e(v1) ^ q1(v1) ^ q2(v1)"]
    assert not any(f.resolvable for f in expand(grammar))


def test_marked_template_wins_a_shared_conjunction():
    grammar = parse_grammar(
        UNARY + "template e(x) ^ q1(x) ^ q2(x)\ntemplate e(x) ^ q1(x) ?=> q2(x)\n"
    )
    (f,) = expand(grammar)
    assert f.resolvable


def test_single_target_implication_is_a_conjunction():
    grammar = parse_grammar(UNARY + "template e(x) => q(x)\n")
    assert texts(grammar, all_variants=True) == ["e(v1) ^ q(v1)"]


HIDDEN_CATEGORY = (
    UNARY
    + """
placeholder H(x:t) := e2(x,c) ^ a(c) | e2(x,c) ^ b(c) [compounder max=2]
template H(x) ^ q(x)
"""
)


def _compound(grammar):
    (both,) = [
        f
        for f in expand(grammar)
        if {lit.predicate.name for lit in f.literals} >= {"a", "b"}
    ]
    return both


def test_compound_locals_are_apart_by_default():
    both = _compound(parse_grammar(HIDDEN_CATEGORY))
    assert len(both.variables) == 3
    assert len(both.literals) == 5


def test_compound_locals_shared_option():
    both = _compound(
        parse_grammar(HIDDEN_CATEGORY + "option compound_locals = shared\n")
    )
    assert len(both.variables) == 2
    assert format_formula(both) == "a(v1) ^ b(v1) ^ e2(v2,v1) ^ q(v2)"


def test_locals_are_standardized_apart_between_uses():
    grammar = parse_grammar(
        UNARY
        + """
placeholder H(x:t) := e2(x,c)
template H(x) ^ H(y) ^ q(x) ^ q(y)
"""
    )
    (f,) = expand(grammar)
    assert len(f.variables) == 4


def test_expansions_without_targets_are_rejected(caplog):
    grammar = parse_grammar(UNARY + "template a(x) ^ b(x)\ntemplate a(x) ^ q(x)\n")
    with caplog.at_level(logging.WARNING):
        assert texts(grammar) == ["a(v1) ^ q(v1)"]
    assert "line 9" in caplog.text


def test_expansion_is_deduplicated_and_order_free():
    first = parse_grammar(
        UNARY
        + """
placeholder P(x:t) := a(x) | b(x) | e(x)
template P(x) ^ q(x)
template q(x) ^ P(x)
"""
    )
    second = parse_grammar(
        UNARY
        + """
placeholder P(x:t) := e(x) | a(x) | b(x)
template q(x) ^ P(x)
"""
    )
    assert expand(first) == expand(second)
    assert expand(first) == expand(first)
    assert len(expand(first)) == 3


def test_candidates_are_canonical():
    grammar = parse_grammar(
        UNARY
        + """
placeholder E1(x:t) := a(x) | e2(x,y) ^ b(y) [compounder max=2]
template E1(x) ^ q1(x) ?=> q2(x)
template e2(y,x) ^ q(x) ^ q(y)
"""
    )
    for all_variants in (False, True):
        for f in expand(grammar, all_variants):
            assert canonicalize(f) == f
            assert f.enforcer
