"""Core model types: alphabets, finite automata, regex ASTs, CFGs, PDAs.

All types are immutable after construction and validate their invariants
in ``__post_init__``, so a constructed value is always well-formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ValidationError

# Characters with a meaning in the textual regex/CFG formats; they can
# never be alphabet symbols.
RESERVED_CHARS = frozenset("_#+*()|")

ACCEPT_FINAL_STATE = "final-state"
ACCEPT_EMPTY_STACK = "empty-stack"


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of single-character input symbols.

    Declaration order matters: it defines lexicographic tie-breaking for
    witness strings downstream.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValidationError("alphabet must be non-empty")
        seen = set()
        for c in self.symbols:
            if len(c) != 1 or not c.isprintable():
                raise ValidationError(f"bad alphabet symbol {c!r}", offending=c)
            if c in RESERVED_CHARS:
                raise ValidationError(f"symbol {c!r} is reserved", offending=c)
            if c in seen:
                raise ValidationError(f"duplicate alphabet symbol {c!r}", offending=c)
            seen.add(c)

    def __contains__(self, c: str) -> bool:
        return c in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def index(self, c: str) -> int:
        return self.symbols.index(c)

    def sort_key(self, word: str) -> tuple:
        """Length-lex ordering key under this alphabet's declaration order."""
        return (len(word), tuple(self.index(c) for c in word))


@dataclass(frozen=True)
class Transition:
    src: str
    read: Optional[str]  # None = epsilon
    dst: str


@dataclass(frozen=True)
class FiniteAutomaton:
    """DFA or NFA over a declared alphabet.

    ``kind`` is "dfa" only when there are no epsilon moves and at most one
    transition per (state, symbol) pair; a DFA need not be complete.
    """

    states: tuple[str, ...]
    alphabet: Alphabet
    transitions: tuple[Transition, ...]
    start: str
    accepting: frozenset[str]
    kind: str  # "dfa" | "nfa"

    def __post_init__(self):
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise ValidationError("duplicate state ids")
        if self.start not in state_set:
            raise ValidationError(f"start state {self.start!r} not declared",
                                  offending=self.start)
        for q in self.accepting:
            if q not in state_set:
                raise ValidationError(f"accepting state {q!r} not declared",
                                      offending=q)
        if self.kind not in ("dfa", "nfa"):
            raise ValidationError(f"bad kind {self.kind!r}")
        seen_pairs = set()
        for t in self.transitions:
            if t.src not in state_set:
                raise ValidationError(f"unknown state {t.src!r}", offending=t.src)
            if t.dst not in state_set:
                raise ValidationError(f"unknown state {t.dst!r}", offending=t.dst)
            if t.read is not None and t.read not in self.alphabet:
                raise ValidationError(f"symbol {t.read!r} not in alphabet",
                                      offending=t.read)
            if self.kind == "dfa":
                if t.read is None:
                    raise ValidationError(
                        f"epsilon move from state {t.src!r} in a DFA",
                        offending=t.src)
                if (t.src, t.read) in seen_pairs:
                    raise ValidationError(
                        f"state {t.src!r} has multiple transitions on {t.read!r}",
                        offending=t.src)
                seen_pairs.add((t.src, t.read))

    def delta(self) -> dict:
        """Transition map {(state, symbol-or-None): set of targets}."""
        out: dict = {}
        for t in self.transitions:
            out.setdefault((t.src, t.read), set()).add(t.dst)
        return out


# --- Regex AST ---------------------------------------------------------------

class Regex:
    """Base class of regex AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class EmptySet(Regex):
    pass


@dataclass(frozen=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True)
class Sym(Regex):
    char: str


@dataclass(frozen=True)
class Concat(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Union(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


# --- Context-free grammars ---------------------------------------------------

@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]  # empty tuple = epsilon rule


@dataclass(frozen=True)
class Cfg:
    """Context-free grammar.

    Nonterminal names are arbitrary strings internally (machine-generated
    grammars from the PDA conversion need more than 26 of them); the
    textual format restricts them to single uppercase letters.
    """

    nonterminals: tuple[str, ...]
    terminals: tuple[str, ...]
    rules: tuple[Rule, ...]
    start: str

    def __post_init__(self):
        nts = set(self.nonterminals)
        terms = set(self.terminals)
        if nts & terms:
            raise ValidationError("nonterminal/terminal name clash")
        if self.start not in nts:
            raise ValidationError(f"start symbol {self.start!r} not declared",
                                  offending=self.start)
        if not self.rules:
            raise ValidationError("rule list must be non-empty")
        for r in self.rules:
            if r.lhs not in nts:
                raise ValidationError(f"rule lhs {r.lhs!r} not a nonterminal",
                                      offending=r.lhs)
            for s in r.rhs:
                if s not in nts and s not in terms:
                    raise ValidationError(f"undeclared symbol {s!r}", offending=s)


# --- Pushdown automata -------------------------------------------------------

BOTTOM_MARKER = "Z"


@dataclass(frozen=True)
class PdaTransition:
    src: str
    read: Optional[str]   # None = epsilon
    pop: Optional[str]    # None = pop nothing
    push: tuple[str, ...] # pushed so that push[0] ends up on top
    dst: str


@dataclass(frozen=True)
class Pda:
    states: tuple[str, ...]
    alphabet: Alphabet
    stack_alphabet: tuple[str, ...]
    transitions: tuple[PdaTransition, ...]
    start: str
    accepting: frozenset[str]
    acceptance_mode: str = ACCEPT_FINAL_STATE

    def __post_init__(self):
        state_set = set(self.states)
        stack_set = set(self.stack_alphabet)
        if BOTTOM_MARKER not in stack_set:
            raise ValidationError(
                f"stack alphabet must include the bottom marker {BOTTOM_MARKER!r}")
        if self.start not in state_set:
            raise ValidationError(f"start state {self.start!r} not declared",
                                  offending=self.start)
        for q in self.accepting:
            if q not in state_set:
                raise ValidationError(f"accepting state {q!r} not declared",
                                      offending=q)
        if self.acceptance_mode not in (ACCEPT_FINAL_STATE, ACCEPT_EMPTY_STACK):
            raise ValidationError(f"bad acceptance mode {self.acceptance_mode!r}")
        if self.acceptance_mode == ACCEPT_FINAL_STATE and not self.accepting:
            raise ValidationError("final-state acceptance requires accepting states")
        for t in self.transitions:
            if t.src not in state_set or t.dst not in state_set:
                raise ValidationError(
                    f"transition references unknown state {t.src!r}/{t.dst!r}")
            if t.read is not None and t.read not in self.alphabet:
                raise ValidationError(f"symbol {t.read!r} not in alphabet",
                                      offending=t.read)
            if t.pop is not None and t.pop not in stack_set:
                raise ValidationError(f"stack symbol {t.pop!r} not declared",
                                      offending=t.pop)
            for s in t.push:
                if s not in stack_set:
                    raise ValidationError(f"stack symbol {s!r} not declared",
                                          offending=s)


# --- Tagged model union ------------------------------------------------------

MODEL_KINDS = ("dfa", "nfa", "regex", "cfg", "pda")

Payload = FiniteAutomaton | Regex | Cfg | Pda


@dataclass(frozen=True)
class Model:
    """A model of any of the five kinds together with its alphabet."""

    kind: str
    alphabet: Alphabet
    payload: Payload

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValidationError(f"bad model kind {self.kind!r}")
        if self.kind in ("dfa", "nfa", "pda"):
            if self.payload.alphabet != self.alphabet:
                raise ValidationError("payload alphabet differs from declared alphabet")
        elif self.kind == "cfg":
            if tuple(self.payload.terminals) != self.alphabet.symbols:
                raise ValidationError("CFG terminals differ from declared alphabet")
