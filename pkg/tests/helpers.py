"""Shared fixtures: the five targeted homework references, random model
generators, and brute-force enumeration helpers used as oracles."""

from __future__ import annotations

import json
import random
from itertools import product

from david.models import (
    Alphabet,
    Cfg,
    FiniteAutomaton,
    Model,
    Rule,
    Transition,
)

ALPHA_AB = Alphabet(("a", "b"))
ALPHA_01 = Alphabet(("0", "1"))


def words_up_to(symbols, max_len):
    """All strings over ``symbols`` of length <= max_len, in length-lex
    order (declaration order breaks ties)."""
    for n in range(max_len + 1):
        for tup in product(symbols, repeat=n):
            yield "".join(tup)


def fa_json(kind, alphabet, states, start, accepting, transitions):
    return json.dumps({
        "type": kind,
        "alphabet": list(alphabet),
        "states": list(states),
        "start": start,
        "accepting": list(accepting),
        "transitions": [
            {"from": src, "read": read, "to": dst}
            for src, read, dst in transitions
        ],
    })


# --- Q1: DFA, at least 2 b's and no substring bb ------------------------------

def q1_predicate(w: str) -> bool:
    return w.count("b") >= 2 and "bb" not in w


def q1_reference_payload() -> str:
    """Naive construction: track (b-count capped at 2, last-was-b) plus a
    dead state for the bb violation."""
    states = [f"c{c}l{l}" for c in range(3) for l in range(2)] + ["dead"]
    transitions = []
    for c in range(3):
        for l in range(2):
            src = f"c{c}l{l}"
            transitions.append((src, "a", f"c{c}l0"))
            if l:
                transitions.append((src, "b", "dead"))
            else:
                transitions.append((src, "b", f"c{min(c + 1, 2)}l1"))
    transitions += [("dead", "a", "dead"), ("dead", "b", "dead")]
    accepting = [f"c2l{l}" for l in range(2)]
    return fa_json("dfa", "ab", states, "c0l0", accepting, transitions)


def q1_no_bb_only_payload() -> str:
    """Wrong submission: checks only the no-bb condition."""
    transitions = [
        ("ok_a", "a", "ok_a"), ("ok_a", "b", "ok_b"),
        ("ok_b", "a", "ok_a"), ("ok_b", "b", "dead"),
        ("dead", "a", "dead"), ("dead", "b", "dead"),
    ]
    return fa_json("dfa", "ab", ["ok_a", "ok_b", "dead"], "ok_a",
                   ["ok_a", "ok_b"], transitions)


# --- Q2: NFA, starts or ends with aba ------------------------------------------

def q2_predicate(w: str) -> bool:
    return w.startswith("aba") or w.endswith("aba")


def q2_reference_payload() -> str:
    transitions = [
        ("s", None, "p0"), ("s", None, "q0"),
        # branch: starts with aba, then anything
        ("p0", "a", "p1"), ("p1", "b", "p2"), ("p2", "a", "p3"),
        ("p3", "a", "p3"), ("p3", "b", "p3"),
        # branch: anything, then ends with aba
        ("q0", "a", "q0"), ("q0", "b", "q0"),
        ("q0", "a", "q1"), ("q1", "b", "q2"), ("q2", "a", "q3"),
    ]
    states = ["s", "p0", "p1", "p2", "p3", "q0", "q1", "q2", "q3"]
    return fa_json("nfa", "ab", states, "s", ["p3", "q3"], transitions)


# --- Q3: regex over {0,1}, neither 000 nor 111 ---------------------------------

Q3_REFERENCE = "(_+0+00)((1+11)(0+00))*(_+1+11)"


def q3_predicate(w: str) -> bool:
    return "000" not in w and "111" not in w


# --- Q4: CFG over {0,1}, more leading 0's than trailing 1's --------------------

Q4_REFERENCE = "S -> 0S1 | T\nT -> 0 | 0X0\nX -> 0X | 1X | _"


def q4_predicate(w: str) -> bool:
    leading = len(w) - len(w.lstrip("0"))
    trailing = len(w) - len(w.rstrip("1"))
    return leading > trailing


# --- Q5: PDA over {a,b}, more a's than b's --------------------------------------

def q5_predicate(w: str) -> bool:
    return w.count("a") > w.count("b")


def _q5_transitions():
    # stack keeps the surplus of whichever letter leads, over the marker
    return [
        {"from": "q0", "read": "a", "pop": "Z", "push": "AZ", "to": "q0"},
        {"from": "q0", "read": "a", "pop": "A", "push": "AA", "to": "q0"},
        {"from": "q0", "read": "a", "pop": "B", "push": "", "to": "q0"},
        {"from": "q0", "read": "b", "pop": "Z", "push": "BZ", "to": "q0"},
        {"from": "q0", "read": "b", "pop": "B", "push": "BB", "to": "q0"},
        {"from": "q0", "read": "b", "pop": "A", "push": "", "to": "q0"},
        {"from": "q0", "read": None, "pop": "A", "push": "A", "to": "qf"},
    ]


def q5_reference_payload() -> str:
    return json.dumps({
        "type": "pda", "alphabet": ["a", "b"],
        "states": ["q0", "qf"], "stackAlphabet": ["Z", "A", "B"],
        "start": "q0", "accepting": ["qf"],
        "acceptanceMode": "final-state",
        "transitions": _q5_transitions(),
    })


def q5_at_least_payload() -> str:
    """Wrong submission: at least as many a's as b's (accepts the empty
    string and all balanced strings too)."""
    transitions = _q5_transitions() + [
        {"from": "q0", "read": None, "pop": "Z", "push": "Z", "to": "qf"},
    ]
    return json.dumps({
        "type": "pda", "alphabet": ["a", "b"],
        "states": ["q0", "qf"], "stackAlphabet": ["Z", "A", "B"],
        "start": "q0", "accepting": ["qf"],
        "acceptanceMode": "final-state",
        "transitions": transitions,
    })


def anbn_pda_payload() -> str:
    """3-state final-state PDA for {a^n b^n | n >= 1}."""
    return json.dumps({
        "type": "pda", "alphabet": ["a", "b"],
        "states": ["q0", "q1", "q2"], "stackAlphabet": ["Z", "A"],
        "start": "q0", "accepting": ["q2"],
        "transitions": [
            {"from": "q0", "read": "a", "pop": "Z", "push": "AZ", "to": "q0"},
            {"from": "q0", "read": "a", "pop": "A", "push": "AA", "to": "q0"},
            {"from": "q0", "read": "b", "pop": "A", "push": "", "to": "q1"},
            {"from": "q1", "read": "b", "pop": "A", "push": "", "to": "q1"},
            {"from": "q1", "read": None, "pop": "Z", "push": "", "to": "q2"},
        ],
    })


def anbn_pda_alt_payload() -> str:
    """Structurally different PDA for the same {a^n b^n | n >= 1}: counts
    with plain marks and accepts by empty stack."""
    return json.dumps({
        "type": "pda", "alphabet": ["a", "b"],
        "states": ["p", "q"], "stackAlphabet": ["Z", "X"],
        "start": "p", "accepting": [],
        "acceptanceMode": "empty-stack",
        "transitions": [
            {"from": "p", "read": "a", "pop": None, "push": "X", "to": "p"},
            {"from": "p", "read": "b", "pop": "X", "push": "", "to": "q"},
            {"from": "q", "read": "b", "pop": "X", "push": "", "to": "q"},
            {"from": "q", "read": None, "pop": "Z", "push": "", "to": "q"},
        ],
    })


# --- Random model generators ----------------------------------------------------

def random_dfa(rng: random.Random, n_states: int,
               alphabet: Alphabet = ALPHA_AB) -> FiniteAutomaton:
    states = tuple(f"q{i}" for i in range(n_states))
    transitions = tuple(
        Transition(q, c, rng.choice(states))
        for q in states for c in alphabet)
    accepting = frozenset(q for q in states if rng.random() < 0.4)
    return FiniteAutomaton(states, alphabet, transitions, "q0", accepting, "dfa")


def random_nfa(rng: random.Random, n_states: int,
               alphabet: Alphabet = ALPHA_AB) -> FiniteAutomaton:
    states = tuple(f"q{i}" for i in range(n_states))
    transitions = []
    for q in states:
        for c in list(alphabet) + [None]:
            for dst in states:
                if rng.random() < (0.15 if c is not None else 0.05):
                    transitions.append(Transition(q, c, dst))
    accepting = frozenset(q for q in states if rng.random() < 0.4)
    return FiniteAutomaton(states, alphabet, tuple(transitions), "q0",
                           accepting, "nfa")


def random_cfg(rng: random.Random, max_nts: int = 4,
               terminals: tuple = ("a", "b")) -> Cfg:
    nts = tuple("SABC"[: rng.randint(1, max_nts)])
    rules = []
    for _ in range(rng.randint(2, 8)):
        lhs = rng.choice(nts)
        rhs = tuple(rng.choice(nts + terminals)
                    for _ in range(rng.randint(0, 3)))
        rules.append(Rule(lhs, rhs))
    return Cfg(nts, terminals, tuple(dict.fromkeys(rules)), "S")


def random_pda_payload(rng: random.Random) -> str:
    """Small random PDA (final-state acceptance)."""
    n_states = rng.randint(1, 3)
    states = [f"q{i}" for i in range(n_states)]
    stack = ["Z", "X"]
    transitions = []
    for _ in range(rng.randint(2, 7)):
        transitions.append({
            "from": rng.choice(states),
            "read": rng.choice(["a", "b", None]),
            "pop": rng.choice(stack + [None]),
            "push": rng.choice(["", "X", "XX", "Z", "XZ"]),
            "to": rng.choice(states),
        })
    return json.dumps({
        "type": "pda", "alphabet": ["a", "b"], "states": states,
        "stackAlphabet": stack, "start": "q0",
        "accepting": [rng.choice(states)],
        "acceptanceMode": "final-state",
        "transitions": transitions,
    })


def model_of(kind: str, alphabet: Alphabet, payload) -> Model:
    return Model(kind, alphabet, payload)
