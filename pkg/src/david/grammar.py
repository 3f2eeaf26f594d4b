"""Bounded CFG equivalence at length k via CNF + bottom-up derivation sets.

Exact CFG equivalence is undecidable; the check here is exhaustive over all
strings up to a length bound (definitive when it reports a difference,
conditional when it reports agreement). Membership itself (CYK) works for
strings of any length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import AlphabetMismatch, EnumerationCapExceeded
from .models import Cfg, Rule

DEFAULT_BOUND = 15
DEFAULT_ENUM_CAP = 2 ** 21
DEFAULT_ORACLE_STEPS = 500_000


@dataclass(frozen=True)
class CnfGrammar:
    """Chomsky normal form image of a Cfg.

    ``accepts_epsilon`` records epsilon membership of the source grammar
    (CNF rules themselves never derive epsilon). ``empty_language`` flags
    grammars that generate nothing at all.
    """

    nonterminals: tuple[str, ...]
    terminals: tuple[str, ...]
    binary_rules: tuple[tuple[str, str, str], ...]  # A -> B C
    terminal_rules: tuple[tuple[str, str], ...]     # A -> a
    start: str
    accepts_epsilon: bool
    empty_language: bool


@dataclass(frozen=True)
class BoundedVerdict:
    """Outcome of a bounded equivalence check.

    ``agrees`` means equality on all strings of length <= ``bound`` only;
    a difference is definitive and carries the length-lex first witness.
    """

    agrees: bool
    bound: int
    witness: Optional[str] = None
    in_first: Optional[bool] = None


# --- CNF conversion ----------------------------------------------------------

def _nullable_set(rules: list[Rule]) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.lhs not in nullable and all(s in nullable for s in r.rhs):
                nullable.add(r.lhs)
                changed = True
    return nullable


def _productive_set(rules: list[Rule], terminals: set[str]) -> set[str]:
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.lhs in productive:
                continue
            if all(s in terminals or s in productive for s in r.rhs):
                productive.add(r.lhs)
                changed = True
    return productive


def _reachable_set(rules: list[Rule], start: str) -> set[str]:
    reachable = {start}
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.lhs in reachable:
                for s in r.rhs:
                    if s not in reachable:
                        reachable.add(s)
                        changed = True
    return reachable


def to_cnf(g: Cfg) -> CnfGrammar:
    """Standard CNF conversion preserving the language (modulo epsilon,
    which is recorded in the ``accepts_epsilon`` flag).

    Order: drop unproductive/unreachable symbols, eliminate epsilon rules,
    eliminate unit rules, binarize, isolate terminals.
    """
    terminals = set(g.terminals)
    accepts_epsilon = g.start in _nullable_set(list(g.rules))

    # 1) useless-symbol removal
    productive = _productive_set(list(g.rules), terminals)
    rules = [r for r in g.rules
             if r.lhs in productive
             and all(s in terminals or s in productive for s in r.rhs)]
    reachable = _reachable_set(rules, g.start)
    rules = [r for r in rules if r.lhs in reachable]

    if g.start not in productive or not rules:
        empty = not accepts_epsilon
        return CnfGrammar((g.start,), g.terminals, (), (), g.start,
                          accepts_epsilon, empty)

    # 2) epsilon elimination: expand every nullable occurrence
    nullable = _nullable_set(rules)
    expanded: set[tuple[str, tuple[str, ...]]] = set()
    order: list[tuple[str, tuple[str, ...]]] = []

    def add(lhs: str, rhs: tuple[str, ...]) -> None:
        if rhs and (lhs, rhs) not in expanded:
            expanded.add((lhs, rhs))
            order.append((lhs, rhs))

    for r in rules:
        nullable_positions = [i for i, s in enumerate(r.rhs) if s in nullable]
        for mask in range(1 << len(nullable_positions)):
            dropped = {nullable_positions[i]
                       for i in range(len(nullable_positions)) if mask >> i & 1}
            rhs = tuple(s for i, s in enumerate(r.rhs) if i not in dropped)
            add(r.lhs, rhs)

    # 3) unit-rule elimination (transitive closure over single-nonterminal rhs)
    nts = set(g.nonterminals)
    unit_pairs = {(a, a) for a in nts}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in order:
            if len(rhs) == 1 and rhs[0] in nts:
                for (a, b) in list(unit_pairs):
                    if b == lhs and (a, rhs[0]) not in unit_pairs:
                        unit_pairs.add((a, rhs[0]))
                        changed = True
    final_rules: list[tuple[str, tuple[str, ...]]] = []
    seen_final: set[tuple[str, tuple[str, ...]]] = set()
    for a, b in sorted(unit_pairs):
        for lhs, rhs in order:
            if lhs == b and not (len(rhs) == 1 and rhs[0] in nts):
                if (a, rhs) not in seen_final:
                    seen_final.add((a, rhs))
                    final_rules.append((a, rhs))

    # 4) terminal isolation and binarization
    term_proxy: dict[str, str] = {}
    binary: list[tuple[str, str, str]] = []
    term_rules: list[tuple[str, str]] = []
    counter = [0]

    def fresh() -> str:
        counter[0] += 1
        return f"_N{counter[0]}"

    def proxy(sym: str) -> str:
        if sym in terminals:
            if sym not in term_proxy:
                name = f"_T{sym}"
                term_proxy[sym] = name
                term_rules.append((name, sym))
            return term_proxy[sym]
        return sym

    for lhs, rhs in final_rules:
        if len(rhs) == 1:
            # after unit elimination a length-1 rhs is a terminal
            term_rules.append((lhs, rhs[0]))
            continue
        syms = [proxy(s) if len(rhs) > 1 else s for s in rhs]
        while len(syms) > 2:
            head = fresh()
            binary.append((head, syms[-2], syms[-1]))
            syms = syms[:-2] + [head]
        binary.append((lhs, syms[0], syms[1]))

    nonterminals = tuple(dict.fromkeys(
        [g.start]
        + [r[0] for r in binary] + [r[1] for r in binary] + [r[2] for r in binary]
        + [r[0] for r in term_rules]))
    # after useless-symbol removal the start symbol has rules iff it
    # derives some terminal string
    has_start_rule = any(r[0] == g.start for r in binary) or any(
        lhs == g.start for lhs, _ in term_rules)
    empty = not accepts_epsilon and not has_start_rule
    return CnfGrammar(nonterminals, g.terminals, tuple(binary),
                      tuple(term_rules), g.start, accepts_epsilon, empty)


# --- Membership ---------------------------------------------------------------

def cyk_member(g: CnfGrammar, word: str) -> bool:
    """CYK membership; epsilon is answered by the accepts_epsilon flag."""
    if word == "":
        return g.accepts_epsilon
    n = len(word)
    heads_of_terminal: dict[str, set[str]] = {}
    for a, c in g.terminal_rules:
        heads_of_terminal.setdefault(c, set()).add(a)
    pair_heads: dict[tuple[str, str], set[str]] = {}
    for a, b, c in g.binary_rules:
        pair_heads.setdefault((b, c), set()).add(a)

    # table[i][l] = nonterminals deriving word[i:i+l]
    table = [[set() for _ in range(n + 1)] for _ in range(n)]
    for i, ch in enumerate(word):
        table[i][1] = set(heads_of_terminal.get(ch, ()))
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            cell = table[i][length]
            for split in range(1, length):
                left = table[i][split]
                if not left:
                    continue
                right = table[i + split][length - split]
                if not right:
                    continue
                for bsym in left:
                    for csym in right:
                        cell |= pair_heads.get((bsym, csym), set())
    return g.start in table[0][n]


def bounded_language(g: CnfGrammar, k: int) -> set[str]:
    """All strings of length <= k generated by the grammar.

    Computed bottom-up per length (binary CNF rules strictly grow length,
    so a single pass in increasing length order suffices).
    """
    by_len: dict[str, list[set[str]]] = {
        a: [set() for _ in range(k + 1)] for a in g.nonterminals}
    for a, c in g.terminal_rules:
        if k >= 1 and a in by_len:
            by_len[a][1].add(c)
    for length in range(2, k + 1):
        for a, b, c in g.binary_rules:
            target = by_len[a][length]
            for i in range(1, length):
                left = by_len[b][i]
                if not left:
                    continue
                right = by_len[c][length - i]
                if not right:
                    continue
                for x in left:
                    for y in right:
                        target.add(x + y)
    result: set[str] = set()
    if g.start in by_len:
        for length in range(1, k + 1):
            result |= by_len[g.start][length]
    if g.accepts_epsilon:
        result.add("")
    return result


# --- Bounded comparison -------------------------------------------------------

def _check_cap(alphabet_size: int, k: int, cap: int) -> None:
    if alphabet_size ** (k + 1) > cap:
        raise EnumerationCapExceeded(
            f"|alphabet|^(k+1) = {alphabet_size}^{k + 1} exceeds cap {cap}")


def _lex_key(terminals: tuple[str, ...], word: str) -> tuple:
    rank = {c: i for i, c in enumerate(terminals)}
    return (len(word), tuple(rank[c] for c in word))


def bounded_diff(a: Cfg, b: Cfg, k: int = DEFAULT_BOUND,
                 cap: int = DEFAULT_ENUM_CAP) -> BoundedVerdict:
    """Compare two grammars on every string of length <= k.

    Returns the length-lex first string on which membership differs, or
    agreement up to k.
    """
    if a.terminals != b.terminals:
        raise AlphabetMismatch("grammars have different terminal alphabets")
    _check_cap(len(a.terminals), k, cap)
    lang_a = bounded_language(to_cnf(a), k)
    lang_b = bounded_language(to_cnf(b), k)
    disagree = lang_a ^ lang_b
    if not disagree:
        return BoundedVerdict(True, k)
    witness = min(disagree, key=lambda w: _lex_key(a.terminals, w))
    return BoundedVerdict(False, k, witness, in_first=witness in lang_a)


def bounded_jaccard(a: Cfg, b: Cfg, k: int = DEFAULT_BOUND,
                    cap: int = DEFAULT_ENUM_CAP) -> Fraction:
    """|A∩B| / |A∪B| over strings of length <= k, as an exact rational.

    Diagnostic only; 1 when both bounded languages are empty.
    """
    if a.terminals != b.terminals:
        raise AlphabetMismatch("grammars have different terminal alphabets")
    _check_cap(len(a.terminals), k, cap)
    lang_a = bounded_language(to_cnf(a), k)
    lang_b = bounded_language(to_cnf(b), k)
    union = lang_a | lang_b
    if not union:
        return Fraction(1)
    return Fraction(len(lang_a & lang_b), len(union))


# --- Independent oracle -------------------------------------------------------

def _saturate(g: Cfg, max_len: int, max_steps: int) -> dict[str, set[str]]:
    """All terminal strings of length <= max_len derivable from each
    nonterminal, by iterating rule application to a fixpoint."""
    nts = set(g.nonterminals)
    derivable: dict[str, set[str]] = {a: set() for a in g.nonterminals}
    steps = 0
    first_round = True
    changed = set(g.nonterminals)
    while changed:
        previous = changed
        changed = set()
        for r in g.rules:
            # re-evaluate only rules whose inputs changed last round
            if not first_round and not (set(r.rhs) & previous):
                continue
            # fold the rhs left to right, pruning overlong strings
            partial = {""}
            for s in r.rhs:
                pieces = derivable[s] if s in nts else {s}
                grown = set()
                for x in partial:
                    for y in pieces:
                        steps += 1
                        if len(x) + len(y) <= max_len:
                            grown.add(x + y)
                partial = grown
                if not partial:
                    break
                if steps > max_steps:
                    return derivable
            fresh = partial - derivable[r.lhs]
            if fresh:
                derivable[r.lhs] |= fresh
                changed.add(r.lhs)
        first_round = False
    return derivable


@lru_cache(maxsize=64)
def _saturated(g: Cfg, max_len: int, max_steps: int) -> dict[str, set[str]]:
    return _saturate(g, max_len, max_steps)


def derivation_oracle(g: Cfg, word: str,
                      max_steps: int = DEFAULT_ORACLE_STEPS) -> bool:
    """Brute-force membership oracle, independent of the CNF+CYK route.

    Saturates the set of derivable strings of length <= |word| directly on
    the raw grammar (no normalization) and looks the word up. The fixpoint
    is finite, so within the step budget the answer is exact.
    """
    return word in _saturated(g, len(word), max_steps)[g.start]
