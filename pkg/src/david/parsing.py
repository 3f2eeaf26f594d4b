"""Textual and JSON formats for the five model kinds.

JSON is the native wire format (canonical form: sorted keys, compact
separators, declaration order preserved in lists). Regexes and CFGs travel
as plain text inside the JSON envelope.
"""

from __future__ import annotations

import json
from typing import Optional

from .errors import ParseError, SchemaError, ValidationError
from .models import (
    ACCEPT_FINAL_STATE,
    Alphabet,
    Cfg,
    Concat,
    EmptySet,
    Epsilon,
    FiniteAutomaton,
    Model,
    Pda,
    PdaTransition,
    Regex,
    Rule,
    Star,
    Sym,
    Transition,
    Union,
)

EPSILON_CHAR = "_"
EMPTY_LANG_CHAR = "#"


# --- JSON helpers ------------------------------------------------------------

def _load_json(document: str) -> dict:
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON: {e}") from e
    if not isinstance(data, dict):
        raise SchemaError("top-level JSON value must be an object")
    return data


def _require(data: dict, key: str, typ) -> object:
    if key not in data:
        raise SchemaError(f"missing field {key!r}")
    value = data[key]
    if not isinstance(value, typ):
        raise SchemaError(f"field {key!r} has wrong type")
    return value


def _string_list(data: dict, key: str) -> list[str]:
    value = _require(data, key, list)
    if not all(isinstance(x, str) for x in value):
        raise SchemaError(f"field {key!r} must be a list of strings")
    return value


def _read_alphabet(data: dict) -> Alphabet:
    return Alphabet(tuple(_string_list(data, "alphabet")))


# --- Finite automata ---------------------------------------------------------

def parse_fa(document: str, expect_dfa: bool = False) -> FiniteAutomaton:
    """Parse the FA JSON schema into a validated FiniteAutomaton.

    With ``expect_dfa`` the determinism invariants are enforced and the
    result has kind "dfa"; otherwise the document's own "type" field rules.
    """
    data = _load_json(document)
    declared = _require(data, "type", str)
    if declared not in ("dfa", "nfa"):
        raise SchemaError(f"unsupported FA type {declared!r}")
    kind = "dfa" if expect_dfa else declared
    alphabet = _read_alphabet(data)
    states = tuple(_string_list(data, "states"))
    start = _require(data, "start", str)
    accepting = frozenset(_string_list(data, "accepting"))
    transitions = []
    for raw in _require(data, "transitions", list):
        if not isinstance(raw, dict):
            raise SchemaError("transitions must be objects")
        src = _require(raw, "from", str)
        dst = _require(raw, "to", str)
        read = raw.get("read")
        if read is not None and not isinstance(read, str):
            raise SchemaError("transition 'read' must be a string or null")
        transitions.append(Transition(src, read, dst))
    return FiniteAutomaton(states, alphabet, tuple(transitions), start,
                           accepting, kind)


# --- Regular expressions -----------------------------------------------------

class _RegexParser:
    """Recursive-descent parser for the textual regex dialect.

    Union is ``+`` (alias ``|``), concatenation is juxtaposition, ``*`` is
    postfix star, ``_`` is the empty string, ``#`` the empty language.
    """

    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Regex:
        if not self.text:
            raise ParseError("empty expression", 0)
        node = self.union()
        if self.peek() is not None:
            if self.peek() == ")":
                raise ParseError("unmatched ')'", self.pos)
            raise ParseError(f"unexpected character {self.peek()!r}", self.pos)
        return node

    def union(self) -> Regex:
        node = self.concat()
        while self.peek() in ("+", "|"):
            op_pos = self.pos
            self.pos += 1
            if self.peek() is None or self.peek() in ")+|":
                raise ParseError("dangling operator", op_pos)
            node = Union(node, self.concat())
        return node

    def concat(self) -> Regex:
        node = self.repeat()
        while self.peek() is not None and self.peek() not in ")+|":
            node = Concat(node, self.repeat())
        return node

    def repeat(self) -> Regex:
        node = self.atom()
        while self.peek() == "*":
            self.pos += 1
            node = Star(node)
        return node

    def atom(self) -> Regex:
        c = self.peek()
        if c is None:
            raise ParseError("unexpected end of expression", self.pos)
        if c == "(":
            open_pos = self.pos
            self.pos += 1
            inner = self.union()
            if self.peek() != ")":
                raise ParseError("unclosed parenthesis", open_pos)
            self.pos += 1
            return inner
        if c == "*":
            raise ParseError("dangling operator", self.pos)
        if c == ")":
            raise ParseError("unmatched ')'", self.pos)
        self.pos += 1
        if c == EPSILON_CHAR:
            return Epsilon()
        if c == EMPTY_LANG_CHAR:
            return EmptySet()
        if c not in self.alphabet:
            raise ParseError(f"symbol {c!r} not in alphabet", self.pos - 1)
        return Sym(c)


def parse_regex(text: str, alphabet: Alphabet) -> Regex:
    return _RegexParser(text.strip(), alphabet).parse()


def _regex_prec(node: Regex) -> int:
    if isinstance(node, Union):
        return 0
    if isinstance(node, Concat):
        return 1
    if isinstance(node, Star):
        return 2
    return 3


def regex_to_text(node: Regex, min_prec: int = 0) -> str:
    """Render a regex AST so that parse_regex reproduces it exactly."""
    if isinstance(node, EmptySet):
        s = EMPTY_LANG_CHAR
    elif isinstance(node, Epsilon):
        s = EPSILON_CHAR
    elif isinstance(node, Sym):
        s = node.char
    elif isinstance(node, Union):
        s = f"{regex_to_text(node.left, 0)}+{regex_to_text(node.right, 1)}"
    elif isinstance(node, Concat):
        s = f"{regex_to_text(node.left, 1)}{regex_to_text(node.right, 2)}"
    elif isinstance(node, Star):
        s = f"{regex_to_text(node.inner, 3)}*"
    else:
        raise TypeError(f"not a regex node: {node!r}")
    if _regex_prec(node) < min_prec:
        s = f"({s})"
    return s


# --- Context-free grammars ---------------------------------------------------

def parse_cfg(text: str, alphabet: Alphabet) -> Cfg:
    """Parse the line-oriented CFG format.

    One nonterminal per line: ``X -> rhs1 | rhs2``; ``_`` is the empty
    right-hand side; the start symbol is the lhs of the first line.
    Nonterminals are single uppercase letters.
    """
    lines = []
    offset = 0
    for raw in text.splitlines():
        if raw.strip():
            lines.append((offset, raw))
        offset += len(raw) + 1
    if not lines:
        raise ParseError("empty grammar", 0)

    lhs_order: list[str] = []
    raw_rules: list[tuple[str, str, int]] = []
    for line_off, line in lines:
        if "->" not in line:
            raise ParseError("expected '->'", line_off)
        lhs_part, rhs_part = line.split("->", 1)
        lhs = lhs_part.strip()
        if len(lhs) != 1 or not lhs.isupper():
            raise ParseError(f"lhs {lhs!r} must be a single uppercase letter",
                             line_off)
        if lhs not in lhs_order:
            lhs_order.append(lhs)
        for alt in rhs_part.split("|"):
            alt = alt.strip()
            if not alt:
                raise ParseError("empty alternative", line_off)
            raw_rules.append((lhs, alt, line_off))

    nonterminals = tuple(lhs_order)
    rules = []
    for lhs, alt, line_off in raw_rules:
        if alt == EPSILON_CHAR:
            rules.append(Rule(lhs, ()))
            continue
        rhs = []
        for c in alt:
            if c.isspace():
                continue
            if c in nonterminals:
                rhs.append(c)
            elif c in alphabet:
                rhs.append(c)
            else:
                raise ValidationError(
                    f"symbol {c!r} is neither a declared nonterminal nor a terminal",
                    offending=c)
        rules.append(Rule(lhs, tuple(rhs)))
    return Cfg(nonterminals, alphabet.symbols, tuple(rules), nonterminals[0])


def cfg_to_text(cfg: Cfg) -> str:
    """Render a Cfg back into the line format (start symbol's line first)."""
    for nt in cfg.nonterminals:
        if len(nt) != 1:
            raise ValidationError(
                f"nonterminal {nt!r} has no textual form", offending=nt)
    by_lhs: dict[str, list[str]] = {}
    order = [cfg.start]
    for r in cfg.rules:
        if r.lhs not in order:
            order.append(r.lhs)
        alt = "".join(r.rhs) if r.rhs else EPSILON_CHAR
        by_lhs.setdefault(r.lhs, []).append(alt)
    lines = [f"{lhs} -> {' | '.join(by_lhs[lhs])}" for lhs in order if lhs in by_lhs]
    return "\n".join(lines)


# --- Pushdown automata -------------------------------------------------------

def parse_pda(document: str) -> Pda:
    """Parse the PDA JSON schema; acceptanceMode defaults to final-state."""
    data = _load_json(document)
    alphabet = _read_alphabet(data)
    states = tuple(_string_list(data, "states"))
    stack_alphabet = tuple(_string_list(data, "stackAlphabet"))
    start = _require(data, "start", str)
    accepting = frozenset(_string_list(data, "accepting"))
    mode = data.get("acceptanceMode", ACCEPT_FINAL_STATE)
    if not isinstance(mode, str):
        raise SchemaError("field 'acceptanceMode' must be a string")
    transitions = []
    for raw in _require(data, "transitions", list):
        if not isinstance(raw, dict):
            raise SchemaError("transitions must be objects")
        src = _require(raw, "from", str)
        dst = _require(raw, "to", str)
        read = raw.get("read")
        pop = raw.get("pop")
        push = raw.get("push", "")
        if read is not None and not isinstance(read, str):
            raise SchemaError("transition 'read' must be a string or null")
        if pop is not None and not isinstance(pop, str):
            raise SchemaError("transition 'pop' must be a string or null")
        if not isinstance(push, str):
            raise SchemaError("transition 'push' must be a string")
        transitions.append(PdaTransition(src, read, pop, tuple(push), dst))
    return Pda(states, alphabet, stack_alphabet, tuple(transitions), start,
               accepting, mode)


# --- Model (tagged union) serialization --------------------------------------

def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _fa_to_dict(fa: FiniteAutomaton) -> dict:
    return {
        "type": fa.kind,
        "alphabet": list(fa.alphabet.symbols),
        "states": list(fa.states),
        "start": fa.start,
        "accepting": sorted(fa.accepting, key=fa.states.index),
        "transitions": [
            {"from": t.src, "read": t.read, "to": t.dst} for t in fa.transitions
        ],
    }


def _pda_to_dict(p: Pda) -> dict:
    return {
        "type": "pda",
        "alphabet": list(p.alphabet.symbols),
        "states": list(p.states),
        "stackAlphabet": list(p.stack_alphabet),
        "start": p.start,
        "accepting": sorted(p.accepting, key=p.states.index),
        "acceptanceMode": p.acceptance_mode,
        "transitions": [
            {
                "from": t.src,
                "read": t.read,
                "pop": t.pop,
                "push": "".join(t.push),
                "to": t.dst,
            }
            for t in p.transitions
        ],
    }


def serialize_model(m: Model) -> str:
    """Canonical JSON for a model; parse(serialize(m)) == m structurally."""
    if m.kind in ("dfa", "nfa"):
        return _dump(_fa_to_dict(m.payload))
    if m.kind == "pda":
        return _dump(_pda_to_dict(m.payload))
    if m.kind == "regex":
        return _dump({
            "type": "regex",
            "alphabet": list(m.alphabet.symbols),
            "text": regex_to_text(m.payload),
        })
    if m.kind == "cfg":
        return _dump({
            "type": "cfg",
            "alphabet": list(m.alphabet.symbols),
            "text": cfg_to_text(m.payload),
        })
    raise ValidationError(f"bad model kind {m.kind!r}")


def model_from_json(document: str) -> Model:
    """Parse the canonical JSON form back into a Model."""
    data = _load_json(document)
    kind = _require(data, "type", str)
    if kind in ("dfa", "nfa"):
        fa = parse_fa(document, expect_dfa=(kind == "dfa"))
        return Model(kind, fa.alphabet, fa)
    if kind == "pda":
        pda = parse_pda(document)
        return Model("pda", pda.alphabet, pda)
    if kind in ("regex", "cfg"):
        alphabet = _read_alphabet(data)
        text = _require(data, "text", str)
        if kind == "regex":
            return Model("regex", alphabet, parse_regex(text, alphabet))
        return Model("cfg", alphabet, parse_cfg(text, alphabet))
    raise SchemaError(f"unsupported model type {kind!r}")


def parse_payload(model_type: str, alphabet: Alphabet, payload: str) -> Model:
    """Parse a raw submission payload for a problem of the given type.

    DFA/NFA and PDA payloads are JSON documents; regex and CFG payloads are
    plain text.
    """
    if model_type in ("dfa", "nfa"):
        fa = parse_fa(payload, expect_dfa=(model_type == "dfa"))
        if fa.alphabet != alphabet:
            raise ValidationError("submission alphabet differs from the problem's")
        return Model(model_type, alphabet, fa)
    if model_type == "pda":
        pda = parse_pda(payload)
        if pda.alphabet != alphabet:
            raise ValidationError("submission alphabet differs from the problem's")
        return Model("pda", alphabet, pda)
    if model_type == "regex":
        return Model("regex", alphabet, parse_regex(payload, alphabet))
    if model_type == "cfg":
        return Model("cfg", alphabet, parse_cfg(payload, alphabet))
    raise ValidationError(f"bad model type {model_type!r}")
