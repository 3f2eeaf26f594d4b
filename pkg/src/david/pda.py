"""Bounded PDA equivalence via normalization + the triple construction.

A PDA is normalized so every move pushes exactly one symbol or pops exactly
one symbol, with a single accept state reached on empty stack; the
classical state-pair construction then yields an equivalent CFG, and the
grammar engine does the bounded comparison. An independent configuration
search provides the membership oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import GrammarBlowupError, SearchCapExceeded
from .grammar import BoundedVerdict, DEFAULT_BOUND, bounded_diff
from .models import (
    ACCEPT_EMPTY_STACK,
    ACCEPT_FINAL_STATE,
    Alphabet,
    Cfg,
    Pda,
    PdaTransition,
    Rule,
)

END_MARKER = "$"
DEFAULT_RULE_CAP = 200_000
DEFAULT_CONFIG_CAP = 2_000_000


@dataclass(frozen=True)
class NormalMove:
    """Unit move: push xor pop of exactly one stack symbol."""

    src: str
    read: Optional[str]
    push: Optional[str]  # exactly one of push/pop is set
    pop: Optional[str]
    dst: str


@dataclass(frozen=True)
class NormalPda:
    """PDA in the form required by the triple construction.

    Starts with an empty stack (the first move pushes the end marker) and
    accepts exactly at ``accept`` with the stack empty again.
    """

    states: tuple[str, ...]
    alphabet: Alphabet
    stack_alphabet: tuple[str, ...]
    moves: tuple[NormalMove, ...]
    start: str
    accept: str


def normalize_pda(p: Pda) -> NormalPda:
    """Language-preserving conversion to unit-push/unit-pop form."""
    moves: list[NormalMove] = []
    counter = [0]
    states: list[str] = []

    def fresh() -> str:
        counter[0] += 1
        name = f"x{counter[0]}"
        states.append(name)
        return name

    def orig(q: str) -> str:
        return f"s_{q}"

    for q in p.states:
        states.append(orig(q))

    stack_alphabet = tuple(dict.fromkeys(
        list(p.stack_alphabet) + [END_MARKER, "@"]))

    # fresh start: push the end marker, then the bottom marker
    start = fresh()
    mid = fresh()
    moves.append(NormalMove(start, None, END_MARKER, None, mid))
    moves.append(NormalMove(mid, None, "Z", None, orig(p.start)))

    for t in p.transitions:
        # decompose (read, pop, push*) into unit moves through fresh states
        steps: list[tuple[Optional[str], Optional[str]]] = []  # (push, pop)
        if t.pop is not None:
            steps.append((None, t.pop))
        for s in reversed(t.push):  # push[0] ends on top, so push it last
            steps.append((s, None))
        if not steps:
            # neither push nor pop: bounce a scratch symbol
            steps = [("@", None), (None, "@")]
        here = orig(t.src)
        for i, (push, pop) in enumerate(steps):
            last = i == len(steps) - 1
            there = orig(t.dst) if last else fresh()
            read = t.read if i == 0 else None
            moves.append(NormalMove(here, read, push, pop, there))
            here = there

    accept = fresh()
    if p.acceptance_mode == ACCEPT_FINAL_STATE:
        # drain the whole stack (end marker included) from accepting states
        for q in p.accepting:
            for s in stack_alphabet:
                moves.append(NormalMove(orig(q), None, None, s, accept))
        for s in stack_alphabet:
            moves.append(NormalMove(accept, None, None, s, accept))
    else:
        # source accepts on empty stack; with the end marker underneath,
        # "empty" means exactly the end marker remains
        for q in p.states:
            moves.append(NormalMove(orig(q), None, None, END_MARKER, accept))

    return NormalPda(tuple(states), p.alphabet, stack_alphabet, tuple(moves),
                     start, accept)


def pda_to_cfg(p: NormalPda, rule_cap: int = DEFAULT_RULE_CAP) -> Cfg:
    """State-pair construction: nonterminal A[q,r] derives exactly the
    inputs taking state q with empty stack to state r with empty stack.

    Decomposition is by first return to empty stack: ``B[q,r]`` covers
    balanced runs whose stack stays non-empty in the interior (a matched
    push/pop pair around an inner balanced run), and ``A[q,r]`` chains one
    such segment with the rest. This derives the same languages as the
    classical all-splits rule set but with far less ambiguity, which keeps
    the bounded enumeration downstream tractable.
    """

    def a_nt(q: str, r: str) -> str:
        return f"A[{q},{r}]"

    def b_nt(q: str, r: str) -> str:
        return f"B[{q},{r}]"

    pushes: dict[str, list[NormalMove]] = {}
    pops: dict[str, list[NormalMove]] = {}
    for m in p.moves:
        if m.push is not None:
            pushes.setdefault(m.push, []).append(m)
        else:
            pops.setdefault(m.pop, []).append(m)

    rules: list[Rule] = []
    # matched push/pop pairs: B[q,r] -> a A[q1,r1] b
    for sym, push_moves in pushes.items():
        for pm in push_moves:
            for qm in pops.get(sym, ()):
                rhs: list[str] = []
                if pm.read is not None:
                    rhs.append(pm.read)
                rhs.append(a_nt(pm.dst, qm.src))
                if qm.read is not None:
                    rhs.append(qm.read)
                rules.append(Rule(b_nt(pm.src, qm.dst), tuple(rhs)))
    # empty runs and first-return chaining
    for q in p.states:
        rules.append(Rule(a_nt(q, q), ()))
    for q in p.states:
        for r in p.states:
            for s in p.states:
                if len(rules) > rule_cap:
                    raise GrammarBlowupError(
                        f"state-pair construction exceeded {rule_cap} rules")
                rules.append(Rule(a_nt(q, s), (b_nt(q, r), a_nt(r, s))))

    start = a_nt(p.start, p.accept)
    nonterminals = {start}
    for rule in rules:
        nonterminals.add(rule.lhs)
        for s in rule.rhs:
            if s.startswith(("A[", "B[")):
                nonterminals.add(s)

    cfg = Cfg(tuple(sorted(nonterminals)), p.alphabet.symbols, tuple(rules),
              start)
    return _prune(cfg)


def _prune(g: Cfg) -> Cfg:
    """Drop unproductive and unreachable nonterminals (keeping the start
    symbol even when the language is empty)."""
    terminals = set(g.terminals)
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.lhs not in productive and all(
                    s in terminals or s in productive for s in r.rhs):
                productive.add(r.lhs)
                changed = True
    rules = [r for r in g.rules
             if r.lhs in productive
             and all(s in terminals or s in productive for s in r.rhs)]
    reachable = {g.start}
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.lhs in reachable:
                for s in r.rhs:
                    if s not in reachable:
                        reachable.add(s)
                        changed = True
    rules = [r for r in rules if r.lhs in reachable]
    if not rules:
        # empty language; keep an unsatisfiable start rule so the Cfg
        # invariant (non-empty rule list) still holds
        return Cfg((g.start,), g.terminals, (Rule(g.start, (g.start,)),),
                   g.start)
    nts = tuple(sorted({r.lhs for r in rules}
                       | {s for r in rules for s in r.rhs
                          if s not in terminals}
                       | {g.start}))
    return Cfg(nts, g.terminals, tuple(rules), g.start)


def simulate_member(p, word: str,
                    max_configs: int = DEFAULT_CONFIG_CAP) -> bool:
    """Independent membership oracle: BFS over (state, position, stack).

    Works for both Pda and NormalPda. Stack depth is pruned at
    |word| + |stack alphabet| + 4, which keeps epsilon push loops finite;
    hitting ``max_configs`` raises SearchCapExceeded (verdict unknown).
    """
    if isinstance(p, NormalPda):
        moves = [(m.src, m.read, m.pop, (m.push,) if m.push else (), m.dst)
                 for m in p.moves]
        initial_stack: tuple[str, ...] = ()
        def accepts(state, stack):
            return state == p.accept and not stack
    else:
        moves = [(t.src, t.read, t.pop, t.push, t.dst) for t in p.transitions]
        initial_stack = ("Z",)
        if p.acceptance_mode == ACCEPT_FINAL_STATE:
            def accepts(state, stack):
                return state in p.accepting
        else:
            def accepts(state, stack):
                return not stack

    by_state: dict[str, list] = {}
    for m in moves:
        by_state.setdefault(m[0], []).append(m)

    depth_cap = len(word) + len(p.stack_alphabet) + 4
    start = (p.start, 0, initial_stack)
    seen = {start}
    queue = deque([start])
    explored = 0
    n = len(word)
    while queue:
        state, pos, stack = queue.popleft()
        explored += 1
        if explored > max_configs:
            raise SearchCapExceeded(
                f"PDA simulation exceeded {max_configs} configurations")
        if pos == n and accepts(state, stack):
            return True
        for _, read, pop, push, dst in by_state.get(state, ()):
            if read is not None:
                if pos >= n or word[pos] != read:
                    continue
                new_pos = pos + 1
            else:
                new_pos = pos
            if pop is not None:
                if not stack or stack[0] != pop:
                    continue
                new_stack = push + stack[1:]
            else:
                new_stack = push + stack
            if len(new_stack) > depth_cap:
                continue
            cfg_ = (dst, new_pos, new_stack)
            if cfg_ not in seen:
                seen.add(cfg_)
                queue.append(cfg_)
    return False


def pda_bounded_diff(a: Pda, b: Pda, k: int = DEFAULT_BOUND) -> BoundedVerdict:
    """Bounded equivalence of two PDAs through the CFG route."""
    return bounded_diff(pda_to_cfg(normalize_pda(a)),
                        pda_to_cfg(normalize_pda(b)), k)
