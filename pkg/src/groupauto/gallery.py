"""Catalog of the workbench's reference automata, each with an oracle.

Every entry pairs an automaton with an independent arithmetic membership
predicate and a recommended step budget, so language tables produced by the
simulator can be checked exhaustively at desk scale.  Automata are kept as
source text in the file format and parsed on demand; ``emit`` therefore
round-trips through the canonical serializer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .algebra import GroupAutoError, GroupSpec, inverse_symbol, parse_group_spec
from .automaton import parse
from .growth import LanguageOracle, lk_oracle, word_problem_oracle
from .simulator import BudgetPolicy, Verdict, enumerate_words


@dataclass
class GalleryEntry:
    name: str
    automaton: GroupAutomaton
    oracle: LanguageOracle
    budget: BudgetPolicy
    note: str


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _upow_oracle() -> LanguageOracle:
    return LanguageOracle(
        "upow", ("a",),
        lambda w: all(s == "a" for s in w) and _is_power_of_two(len(w)))


def _odd_pow_oracle() -> LanguageOracle:
    def member(w):
        n = len(w)
        if not all(s == "a" for s in w) or not _is_power_of_two(n):
            return False
        return n.bit_length() % 2 == 0  # 2^(2x+1) has odd exponent
    return LanguageOracle("odd-pow", ("a",), member)


def _block_counts(word, symbols):
    """Counts (c1..ck) when word is exactly s1^c1 ... sk^ck, else None."""
    counts = [0] * len(symbols)
    idx = 0
    for s in word:
        while idx < len(symbols) and s != symbols[idx]:
            idx += 1
        if idx == len(symbols):
            return None
        counts[idx] += 1
    return tuple(counts)


def _mult_oracle() -> LanguageOracle:
    def member(w):
        counts = _block_counts(w, ("x", "y", "z"))
        if counts is None:
            return False
        p, q, r = counts
        return r == p * q
    return LanguageOracle("mult", ("x", "y", "z"), member)


def _anbn_oracle() -> LanguageOracle:
    def member(w):
        counts = _block_counts(w, ("a", "b"))
        return counts is not None and counts[0] == counts[1]
    return LanguageOracle("anbn", ("a", "b"), member)


def _anbncn_oracle(name="anbncn") -> LanguageOracle:
    def member(w):
        counts = _block_counts(w, ("a", "b", "c"))
        return counts is not None and counts[0] == counts[1] == counts[2]
    return LanguageOracle(name, ("a", "b", "c"), member)


def _palindrome_oracle() -> LanguageOracle:
    return LanguageOracle("palindrome", ("a", "b"), lambda w: w == w[::-1])


UPOW_SOURCE = """\
# unary powers of two; register in the Baumslag-Solitar group BS(1,2)
group bs12
alphabet a
states u0 u1 u2 u3
initial u0
accept u3
trans u0 eps u0 : B^-1 A^-1
trans u0 a u1 : _
trans u1 a u1 : A
trans u1 eps u2 : _
trans u2 eps u2 : B
trans u2 eps u3 : _
"""

ODD_POW_SOURCE = """\
# unary words of length 2^(2n+1); register in SL(2,Q)
group matrixq 2
gen A1 = [[2,0],[1,1/2]]
gen A2 = [[2,0],[0,1/2]]
gen A3 = [[1,0],[-1,1]]
gen A4 = [[1/2,0],[0,2]]
alphabet a
states s0 s1 s2 s3 s4
initial s0
accept s4
trans s0 eps s1 : A1
trans s1 eps s1 : A2
trans s1 eps s2 : _
trans s2 a s2 : A3
trans s2 eps s3 : _
trans s3 eps s3 : A4
trans s3 eps s4 : _
"""

MULT_SOURCE = """\
# x^p y^q z^(p*q); register in the discrete Heisenberg group
# cancellation must run the a-inverse loop before the b-inverse loop
group heisenberg
alphabet x y z
states m0 m1 m2 m3 m4
initial m0
accept m4
trans m0 x m0 : a
trans m0 eps m1 : _
trans m1 y m1 : b
trans m1 eps m2 : _
trans m2 z m2 : c^-1
trans m2 eps m3 : _
trans m3 eps m3 : a^-1
trans m3 eps m4 : _
trans m4 eps m4 : b^-1
"""

ANBN_SOURCE = """\
# a^n b^n with one blind counter
group abelian 1
alphabet a b
states n0 n1
initial n0
accept n0 n1
trans n0 a n0 : e1
trans n0 b n1 : e1^-1
trans n1 b n1 : e1^-1
"""

ANBNCN_SOURCE = """\
# a^n b^n c^n with two blind counters, real time
group abelian 2
alphabet a b c
states d0 d1 d2
initial d0
accept d0 d2
trans d0 a d0 : e1 e2
trans d0 b d1 : e1^-1
trans d1 b d1 : e1^-1
trans d1 c d2 : e2^-1
trans d2 c d2 : e2^-1
"""

ANBNCN_F2XF2_SOURCE = """\
# a^n b^n c^n using two free-group registers as counters, real time
group product (free 2) (free 2)
alphabet a b c
states f0 f1 f2
initial f0
accept f0 f2
trans f0 a f0 : a1 a2
trans f0 b f1 : a1^-1
trans f1 b f1 : a1^-1
trans f1 c f2 : a2^-1
trans f2 c f2 : a2^-1
"""

KX_ANBN_SOURCE = """\
# a^n b^n with a pushdown register: push on a, pop on b; epsilon-free
group polycyclic 1
alphabet a b
states k0 k1
initial k0
accept k0 k1
trans k0 a k0 : P1
trans k0 b k1 : Q1
trans k1 b k1 : Q1
"""

KX_PAL_SOURCE = """\
# palindromes over {a,b}: push a prefix, guess the middle, pop the mirror
group polycyclic 2
alphabet a b
states p0 p1
initial p0
accept p0 p1
trans p0 a p0 : P1
trans p0 b p0 : P2
trans p0 a p1 : Q1
trans p0 b p1 : Q2
trans p0 a p1 : _
trans p0 b p1 : _
trans p1 a p1 : Q1
trans p1 b p1 : Q2
"""


def _lk_source(k: int) -> str:
    lines = [f"# doubled block language with {k} blocks, one counter per block",
             f"group abelian {k}",
             "alphabet 0 1",
             "states " + " ".join(f"s{i}" for i in range(1, 2 * k + 2)),
             "initial s1",
             f"accept s{2 * k + 1}"]
    for i in range(1, 2 * k + 1):
        counter = (i - 1) % k + 1
        sign = "" if i <= k else "^-1"
        lines.append(f"trans s{i} 0 s{i} : e{counter}{sign}")
        lines.append(f"trans s{i} 1 s{i + 1} : _")
    return "\n".join(lines) + "\n"


def _wp_source(spec: GroupSpec, generator_names) -> str:
    lines = ["# word problem: one state, one loop per generator and inverse",
             f"group {spec.describe()}"]
    symbols = []
    loops = []
    for name in generator_names:
        inv = inverse_symbol(name)
        symbols.extend((name, inv))
        loops.append(f"trans w0 {name} w0 : {name}")
        loops.append(f"trans w0 {inv} w0 : {name}^-1")
    lines.append("alphabet " + " ".join(symbols))
    lines.extend(["states w0", "initial w0", "accept w0"])
    lines.extend(loops)
    return "\n".join(lines) + "\n"


def _wp_generator_names(spec: GroupSpec):
    # growth statements about the Heisenberg group use {a, b}; c is their
    # commutator and is deliberately not part of the generating set
    if spec.kind == "heisenberg":
        return ("a", "b")
    return tuple(spec.gens)


_FIXED = {
    "upow": (UPOW_SOURCE, _upow_oracle, BudgetPolicy(4, 8),
             "unary powers of two over BS(1,2)"),
    "odd-pow": (ODD_POW_SOURCE, _odd_pow_oracle, BudgetPolicy(1, 20),
                "unary words of length 2^(2n+1) over SL(2,Q)"),
    "mult": (MULT_SOURCE, _mult_oracle, BudgetPolicy(2, 8),
             "x^p y^q z^(p*q) over the Heisenberg group"),
    "anbn": (ANBN_SOURCE, _anbn_oracle, BudgetPolicy(1, 2),
             "a^n b^n with one blind counter, real time"),
    "anbncn": (ANBNCN_SOURCE, _anbncn_oracle, BudgetPolicy(1, 2),
               "a^n b^n c^n with two blind counters, real time"),
    "anbncn-f2xf2": (ANBNCN_F2XF2_SOURCE,
                     lambda: _anbncn_oracle("anbncn-f2xf2"), BudgetPolicy(1, 2),
                     "a^n b^n c^n with two free-group registers as counters"),
    "kx-anbn": (KX_ANBN_SOURCE, _anbn_oracle, BudgetPolicy(1, 2),
                "a^n b^n with a pushdown register, epsilon-free"),
    "kx-pal": (KX_PAL_SOURCE, _palindrome_oracle, BudgetPolicy(1, 2),
               "palindromes over {a,b} with a pushdown register, epsilon-free"),
}


def names() -> list:
    """Concrete catalog names, instantiating the parameterised templates."""
    return list(_FIXED) + ["lk 2", "wp free 2"]


def templates() -> list:
    return list(_FIXED) + ["lk <k>", "wp <group spec>"]


def build(name: str) -> GalleryEntry:
    name = " ".join(name.split())
    if name in _FIXED:
        source, oracle_factory, budget, note = _FIXED[name]
        return GalleryEntry(name, parse(source), oracle_factory(), budget, note)
    parts = name.split(None, 1)
    if parts[0] == "lk" and len(parts) == 2:
        k = int(parts[1])
        if k < 1:
            raise GroupAutoError("lk needs k >= 1")
        return GalleryEntry(name, parse(_lk_source(k)), lk_oracle(k),
                            BudgetPolicy(1, 2),
                            f"doubled block language with {k} blocks, real time")
    if parts[0] == "wp" and len(parts) == 2:
        spec = parse_group_spec(parts[1])
        gen_names = _wp_generator_names(spec)
        return GalleryEntry(name, parse(_wp_source(spec, gen_names)),
                            word_problem_oracle(spec, gen_names),
                            BudgetPolicy(1, 2),
                            f"word problem of {spec.describe()}, real time")
    raise GroupAutoError(f"unknown gallery entry {name!r}; see 'gallery list'")


@dataclass
class VerifyReport:
    name: str
    max_len: int
    checked: int
    mismatches: list          # (word, verdict, oracle says)
    budget_exhausted: list    # words the budget could not decide
    accepted: int
    max_min_steps: Optional[int]

    @property
    def agreed(self) -> bool:
        return not self.mismatches and not self.budget_exhausted


def verify_entry(entry: GalleryEntry, max_len: int,
                 budget: Optional[BudgetPolicy] = None) -> VerifyReport:
    """Exhaustively compare simulator verdicts with the entry's oracle."""
    budget = budget or entry.budget
    mismatches = []
    exhausted = []
    accepted = 0
    max_steps = None
    checked = 0
    for word, result in enumerate_words(entry.automaton, max_len, budget):
        checked += 1
        expected = entry.oracle(word)
        got = result.verdict is Verdict.ACCEPTED
        if result.verdict is Verdict.BUDGET_EXHAUSTED:
            exhausted.append(word)
        elif got != expected:
            mismatches.append((word, result.verdict.value, expected))
        if got:
            accepted += 1
            if max_steps is None or result.min_accepting_steps > max_steps:
                max_steps = result.min_accepting_steps
    return VerifyReport(entry.name, max_len, checked, mismatches, exhausted,
                        accepted, max_steps)
