"""Growth functions, word-problem languages, and dissimilarity witnesses.

Balls are enumerated breadth-first over right multiplication by the chosen
generators (and their inverses, for group kinds), deduplicating on canonical
form.  The first-visit layer of an element is its generator length, and the
BFS parent links give deterministic shortest representative words with
lexicographic tie-breaking in generator order.

Uniform dissimilarity is handled as a witnessed lower bound: a witness set
pairs each string with an extension that puts it inside the language while
throwing every other member outside.  ``verify_witness`` checks the defining
property exhaustively; nothing here attempts exact maximisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .algebra import (
    AlgebraError,
    CapExceeded,
    GroupSpec,
    inverse_symbol,
)
from .automaton import GroupAutomaton
from .simulator import BudgetPolicy, reachable_registers

DEFAULT_BALL_CAP = 2_000_000


@dataclass
class BallTable:
    """Cayley-ball sizes g(0..R), optionally with the elements themselves."""

    spec: GroupSpec
    generator_names: tuple
    sizes: list
    reps: Optional[dict] = None  # canonical key -> (element, layer, word)

    @property
    def radius(self) -> int:
        return len(self.sizes) - 1

    def growth(self, r: int) -> int:
        return self.sizes[r]

    def rows(self) -> list:
        return [(r, self.sizes[r]) for r in range(len(self.sizes))]

    def element_length(self, key: bytes) -> Optional[int]:
        if self.reps is None or key not in self.reps:
            return None
        return self.reps[key][1]


def _directions(spec: GroupSpec, generator_names: Sequence[str]) -> list:
    dirs = []
    for name in generator_names:
        g = spec.generator(name)
        dirs.append((name, 1, g))
        if spec.is_group():
            dirs.append((name, -1, spec.inverse(g)))
    return dirs


def ball(spec: GroupSpec, generator_names: Sequence[str], radius: int,
         cap: int = DEFAULT_BALL_CAP, keep_elements: bool = True) -> BallTable:
    """Breadth-first Cayley ball of the given radius.

    For monoid kinds only the positive generators are used.
    """
    names = tuple(generator_names)
    dirs = _directions(spec, names)
    identity = spec.identity()
    key = spec.canonical_key
    mul = spec.mul
    reps = {key(identity): (identity, 0, ())}
    layer = [(identity, ())]
    sizes = [1]
    for r in range(1, radius + 1):
        nxt = []
        for element, word in layer:
            for idx, (name, exp, g) in enumerate(dirs):
                candidate = mul(element, g)
                k = key(candidate)
                if k not in reps:
                    reps[k] = (candidate, r, word + (idx,))
                    nxt.append((candidate, word + (idx,)))
            if len(reps) > cap:
                raise CapExceeded(f"ball of radius {radius} exceeded cap {cap}")
        sizes.append(len(reps))
        layer = nxt
        if not nxt:
            sizes.extend([len(reps)] * (radius - r))
            break
    table = BallTable(spec, names, sizes, reps if keep_elements else None)
    table._dirs = dirs  # reused when rendering representative words
    return table


def ball_rep_words(table: BallTable) -> list:
    """Shortest representative words, as symbol tuples, in BFS order."""
    dirs = getattr(table, "_dirs", None) or _directions(table.spec, table.generator_names)
    ordered = sorted(table.reps.values(), key=lambda item: (item[1], item[2]))
    out = []
    for element, layer, word in ordered:
        symbols = tuple(
            dirs[idx][0] if dirs[idx][1] == 1 else inverse_symbol(dirs[idx][0])
            for idx in word)
        out.append(symbols)
    return out


# ---------------------------------------------------------------------------
# language oracles


@dataclass
class LanguageOracle:
    """A named, pure membership predicate over symbol tuples."""

    name: str
    alphabet: tuple
    membership: Callable[[tuple], bool]
    witness_builder: Optional[Callable[[int], "WitnessSet"]] = None

    def __call__(self, word: Sequence[str]) -> bool:
        return self.membership(tuple(word))

    def witness(self, n: int) -> "WitnessSet":
        if self.witness_builder is None:
            raise AlgebraError(f"oracle {self.name!r} has no witness construction")
        return self.witness_builder(n)


def word_problem_oracle(spec: GroupSpec, generator_names: Sequence[str]) -> LanguageOracle:
    """Oracle for the words over X and X^-1 that multiply to the identity."""
    if not spec.is_group():
        raise AlgebraError("word problem oracles need a group kind")
    names = tuple(generator_names)
    mapping = {}
    alphabet = []
    for name in names:
        mapping[name] = (name, 1)
        inv = inverse_symbol(name)
        mapping[inv] = (name, -1)
        alphabet.extend((name, inv))
    identity = spec.identity()

    def membership(word: tuple) -> bool:
        acc = identity
        for symbol in word:
            try:
                name, exp = mapping[symbol]
            except KeyError:
                return False
            g = spec.generator(name)
            acc = spec.mul(acc, g if exp == 1 else spec.inverse(g))
        return acc == identity

    oracle = LanguageOracle(f"wp {spec.describe()}", tuple(alphabet), membership)
    oracle.witness_builder = lambda n: dissimilar_from_ball(spec, names, n, oracle)
    return oracle


def lk_oracle(k: int) -> LanguageOracle:
    """Oracle for the doubled block language over {0, 1} with k blocks."""

    def membership(word: tuple) -> bool:
        if not word or word[-1] != "1":
            return False
        ones = [i for i, s in enumerate(word) if s == "1"]
        if len(ones) != 2 * k:
            return False
        half = ones[k - 1] + 1
        return word[:half] == word[half:]

    oracle = LanguageOracle(f"lk {k}", ("0", "1"), membership)

    def builder(n: int) -> "WitnessSet":
        m = n // (2 * k) - 1
        if m < 0:
            raise AlgebraError(f"bound {n} is too small for an lk {k} witness")
        return lk_witness(k, m)

    oracle.witness_builder = builder
    return oracle


# ---------------------------------------------------------------------------
# witness sets


@dataclass
class WitnessSet:
    """Uniformly dissimilar strings with their extension witnesses.

    For every w in ``strings`` the extension v(w) satisfies |w v(w)| <= n and
    w v(w) in L, while for every other member w', |w' v(w)| <= n and
    w' v(w) not in L.
    """

    strings: tuple
    extensions: dict
    bound: int
    oracle: LanguageOracle

    def __len__(self) -> int:
        return len(self.strings)


def dissimilar_from_ball(spec: GroupSpec, generator_names: Sequence[str], n: int,
                         oracle: Optional[LanguageOracle] = None,
                         cap: int = DEFAULT_BALL_CAP) -> WitnessSet:
    """Witness set of size g(floor(n/2)) for the word problem of ``spec``.

    Takes the shortest representative of every ball element and extends each
    with its own inverse word; distinct elements then separate exactly.
    """
    if n < 2:
        raise AlgebraError("dissimilarity bound must be at least 2")
    if oracle is None:
        oracle = word_problem_oracle(spec, generator_names)
    table = ball(spec, generator_names, n // 2, cap=cap)
    words = ball_rep_words(table)
    inverse_of = {}
    for name in generator_names:
        inv = inverse_symbol(name)
        inverse_of[name] = inv
        inverse_of[inv] = name
    strings = []
    extensions = {}
    for w in words:
        v = tuple(inverse_of[s] for s in reversed(w))
        strings.append(w)
        extensions[w] = v
    return WitnessSet(tuple(strings), extensions, n, oracle)


def lk_witness(k: int, m: int) -> WitnessSet:
    """All k-block strings with block sizes <= m, each extended by itself."""
    if k < 1 or m < 0:
        raise AlgebraError("lk witness needs k >= 1 and m >= 0")
    from itertools import product
    strings = []
    extensions = {}
    for sizes in product(range(m + 1), repeat=k):
        w = tuple()
        for a in sizes:
            w += ("0",) * a + ("1",)
        strings.append(w)
        extensions[w] = w
    bound = 2 * (k + k * m)
    return WitnessSet(tuple(strings), extensions, bound, lk_oracle(k))


def verify_witness(ws: WitnessSet):
    """Exhaustively check both clauses; returns (ok, first counterexample)."""
    n = ws.bound
    member = ws.oracle
    for w in ws.strings:
        v = ws.extensions[w]
        if len(w) + len(v) > n:
            return False, (w, w, "own extension exceeds the bound")
        if not member(w + v):
            return False, (w, w, "own extension leaves the language")
    for w in ws.strings:
        v = ws.extensions[w]
        for other in ws.strings:
            if other == w:
                continue
            if len(other) + len(v) > n:
                return False, (other, w, "cross extension exceeds the bound")
            if member(other + v):
                return False, (other, w, "cross extension stays in the language")
    return True, None


# ---------------------------------------------------------------------------
# configuration-counting audit


@dataclass
class CountingAuditReport:
    """Desk-scale comparison behind the growth/time counting argument."""

    automaton_states: int
    register_count: int
    budget: BudgetPolicy
    steps: int
    bound: int
    oracle_name: str
    witness_size: int
    witness_ok: bool
    flagged: bool

    @property
    def configuration_count(self) -> int:
        return self.automaton_states * self.register_count

    def rows(self) -> list:
        return [
            ("states", self.automaton_states),
            ("registers_within_budget", self.register_count),
            ("configurations", self.configuration_count),
            ("witness_size", self.witness_size),
            ("flagged", int(self.flagged)),
        ]


def counting_audit(automaton: GroupAutomaton, oracle: LanguageOracle,
                   budget: BudgetPolicy, n: int,
                   max_configs: int = DEFAULT_BALL_CAP) -> CountingAuditReport:
    """Compare reachable configurations at t(n) against a witnessed |S| at n.

    A flag means the pigeonhole argument already bites at this scale: fewer
    configurations than uniformly dissimilar strings rules out this automaton
    (and budget) for the oracle's language.
    """
    steps = budget.limit(n)
    reach = reachable_registers(automaton, steps, max_configs=max_configs)
    ws = oracle.witness(n)
    ok, _ = verify_witness(ws)
    config_count = len(reach) * len(automaton.states)
    return CountingAuditReport(
        automaton_states=len(automaton.states),
        register_count=len(reach),
        budget=budget,
        steps=steps,
        bound=n,
        oracle_name=oracle.name,
        witness_size=len(ws),
        witness_ok=ok,
        flagged=config_count < len(ws),
    )


# ---------------------------------------------------------------------------
# witness set serialization (TSV with a header naming oracle and bound)


def render_witness(ws: WitnessSet) -> str:
    lines = [f"oracle={ws.oracle.name}\tn={ws.bound}"]
    for w in ws.strings:
        lines.append(" ".join(w) + "\t" + " ".join(ws.extensions[w]))
    return "\n".join(lines) + "\n"


def parse_witness(text: str, oracle: Optional[LanguageOracle] = None) -> WitnessSet:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("oracle="):
        raise AlgebraError("witness file needs an 'oracle=...<TAB>n=...' header")
    header, _, bound_part = lines[0].partition("\t")
    oracle_name = header[len("oracle="):]
    if not bound_part.startswith("n="):
        raise AlgebraError("witness header missing the bound")
    bound = int(bound_part[2:])
    if oracle is None:
        oracle = oracle_by_name(oracle_name)
    strings = []
    extensions = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        w_part, _, v_part = line.partition("\t")
        w = tuple(w_part.split())
        v = tuple(v_part.split())
        strings.append(w)
        extensions[w] = v
    return WitnessSet(tuple(strings), extensions, bound, oracle)


def oracle_by_name(name: str) -> LanguageOracle:
    """Resolve ``wp <group spec>`` and ``lk <k>`` oracle names."""
    from .algebra import parse_group_spec
    parts = name.split(None, 1)
    if parts and parts[0] == "wp" and len(parts) == 2:
        spec = parse_group_spec(parts[1])
        default_names = tuple(spec.gens) if spec.kind != "heisenberg" else ("a", "b")
        return word_problem_oracle(spec, default_names)
    if parts and parts[0] == "lk" and len(parts) == 2:
        return lk_oracle(int(parts[1]))
    raise AlgebraError(f"unknown oracle name {name!r}")
