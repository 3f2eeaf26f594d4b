"""Import of JFLAP .jff files (fa, pda, and grammar structures only).

Layout attributes (coordinates) are ignored; the alphabet is inferred from
the symbols actually used, ordered by first appearance.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .errors import SchemaError, ValidationError
from .models import (
    ACCEPT_FINAL_STATE,
    BOTTOM_MARKER,
    Alphabet,
    Cfg,
    FiniteAutomaton,
    Model,
    Pda,
    PdaTransition,
    Rule,
    Transition,
)


def _text(elem, tag: str) -> str:
    child = elem.find(tag)
    if child is None or child.text is None:
        return ""
    return child.text.strip()


def _parse_states(root) -> tuple[list[str], str, set[str]]:
    names: dict[str, str] = {}
    order: list[str] = []
    initial = None
    final: set[str] = set()
    automaton = root.find("automaton")
    container = automaton if automaton is not None else root
    for state in container.iter("state"):
        sid = state.get("id")
        if sid is None:
            raise SchemaError("state element without id")
        name = state.get("name") or f"q{sid}"
        names[sid] = name
        order.append(name)
        if state.find("initial") is not None:
            initial = name
        if state.find("final") is not None:
            final.add(name)
    if initial is None:
        raise ValidationError("no initial state")
    return order, initial, final, names


def _import_fa(root) -> Model:
    order, initial, final, names = _parse_states(root)
    automaton = root.find("automaton")
    container = automaton if automaton is not None else root
    symbols: list[str] = []
    transitions = []
    for trans in container.iter("transition"):
        src = names.get(_text(trans, "from"))
        dst = names.get(_text(trans, "to"))
        if src is None or dst is None:
            raise ValidationError("transition references unknown state")
        read = _text(trans, "read") or None
        if read is not None:
            if len(read) != 1:
                raise ValidationError(
                    f"multi-character transition label {read!r}", offending=read)
            if read not in symbols:
                symbols.append(read)
        transitions.append(Transition(src, read, dst))
    alphabet = Alphabet(tuple(symbols))
    fa = FiniteAutomaton(tuple(order), alphabet, tuple(transitions), initial,
                         frozenset(final), "nfa")
    return Model("nfa", alphabet, fa)


def _import_pda(root) -> Model:
    order, initial, final, names = _parse_states(root)
    automaton = root.find("automaton")
    container = automaton if automaton is not None else root
    symbols: list[str] = []
    stack_symbols: list[str] = [BOTTOM_MARKER]
    transitions = []
    for trans in container.iter("transition"):
        src = names.get(_text(trans, "from"))
        dst = names.get(_text(trans, "to"))
        if src is None or dst is None:
            raise ValidationError("transition references unknown state")
        read = _text(trans, "read") or None
        if read is not None:
            if len(read) != 1:
                raise ValidationError(
                    f"multi-character transition label {read!r}", offending=read)
            if read not in symbols:
                symbols.append(read)
        pop_text = _text(trans, "pop")
        if len(pop_text) > 1:
            raise ValidationError(f"pop of more than one symbol {pop_text!r}")
        pop = pop_text or None
        push = _text(trans, "push")
        for s in [pop] if pop else []:
            if s not in stack_symbols:
                stack_symbols.append(s)
        for s in push:
            if s not in stack_symbols:
                stack_symbols.append(s)
        transitions.append(PdaTransition(src, read, pop, tuple(push), dst))
    alphabet = Alphabet(tuple(symbols))
    pda = Pda(tuple(order), alphabet, tuple(stack_symbols), tuple(transitions),
              initial, frozenset(final), ACCEPT_FINAL_STATE)
    return Model("pda", alphabet, pda)


def _import_grammar(root) -> Model:
    lhs_order: list[str] = []
    raw: list[tuple[str, str]] = []
    for prod in root.iter("production"):
        left = _text(prod, "left")
        right = _text(prod, "right")
        if len(left) != 1 or not left.isupper():
            raise ValidationError(
                f"grammar lhs {left!r} must be a single uppercase letter")
        if left not in lhs_order:
            lhs_order.append(left)
        raw.append((left, right))
    if not raw:
        raise ValidationError("grammar structure has no productions")
    terminals: list[str] = []
    for _, right in raw:
        for c in right:
            if c not in lhs_order and c not in terminals:
                terminals.append(c)
    alphabet = Alphabet(tuple(terminals))
    rules = tuple(Rule(lhs, tuple(rhs)) for lhs, rhs in raw)
    cfg = Cfg(tuple(lhs_order), alphabet.symbols, rules, lhs_order[0])
    return Model("cfg", alphabet, cfg)


def import_jff(xml: str) -> Model:
    """Import a JFLAP file; supports fa, pda, and grammar structures."""
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as e:
        raise SchemaError(f"malformed XML: {e}") from e
    if root.tag != "structure":
        raise SchemaError(f"expected root element 'structure', got {root.tag!r}")
    kind = _text(root, "type")
    if kind == "fa":
        return _import_fa(root)
    if kind == "pda":
        return _import_pda(root)
    if kind == "grammar":
        return _import_grammar(root)
    raise SchemaError(f"unsupported model type {kind!r}")
