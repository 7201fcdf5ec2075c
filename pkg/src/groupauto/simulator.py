"""Budget-bounded nondeterministic execution of group automata.

A run starts in the initial state with the identity register, multiplies the
register by each transition's label element, and accepts if it finishes the
input in an accepting state with the register back at the identity.  The
search is a breadth-first exploration of configurations (state, position,
register); a configuration is expanded at most once, at its minimal step
count, so accepting witnesses are always step-minimal.

Verdicts are three-valued because membership is undecidable for general
register groups:

``ACCEPTED``
    some run of at most t(n) steps accepts; a minimal witness is returned.
``REJECTED_WITHIN_BUDGET``
    the search exhausted every configuration from which an accepting run of
    total length <= t(n) is still arithmetically possible, and found none.
    This proves no run of ANY length within the budget accepts.  When the
    exploration additionally closed without clipping any successor at the
    budget boundary (``fully_explored``), no accepting run exists at all and
    the verdict is stable under any budget increase.
``BUDGET_EXHAUSTED``
    the budget is too small to read the whole input, so the search cannot
    decide anything about it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .algebra import CapExceeded, GroupAutoError, render_word
from .automaton import GroupAutomaton, Transition

DEFAULT_MAX_CONFIGS = 2_000_000
DEFAULT_ENUM_CAP = 300_000


@dataclass(frozen=True)
class BudgetPolicy:
    """Affine step budget t(n) = alpha*n + beta."""

    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or (self.alpha == 0 and self.beta == 0):
            raise GroupAutoError("budget needs alpha >= 0, beta >= 0, not both zero")

    @classmethod
    def cap(cls, steps: int) -> "BudgetPolicy":
        return cls(0, steps)

    @classmethod
    def default(cls) -> "BudgetPolicy":
        return cls(2, 16)

    def limit(self, n: int) -> int:
        return self.alpha * n + self.beta

    def render(self) -> str:
        return f"{self.alpha}n+{self.beta}"


class Verdict(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED_WITHIN_BUDGET = "RejectedWithinBudget"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass
class RunResult:
    verdict: Verdict
    trace: Optional[tuple] = None
    configs_explored: int = 0
    distinct_registers: int = 0
    min_accepting_steps: Optional[int] = None
    fully_explored: bool = False
    word: tuple = ()
    limit: int = 0

    def trace_lines(self, spec) -> list:
        lines = []
        register = spec.identity()
        for t in self.trace or ():
            register = spec.mul(register, spec.eval_word(t.label))
            sym = t.symbol if t.symbol is not None else "eps"
            lines.append(f"{t.src} --{sym}/{render_word(t.label)}--> {t.dst} ; "
                         f"register={spec.literal(register)}")
        return lines


@lru_cache(maxsize=256)
def _moves(automaton: GroupAutomaton):
    """Per-state epsilon and per-symbol successor tables with label data."""
    elements = automaton.label_elements()
    spec = automaton.spec
    identity = spec.identity()
    eps = {q: [] for q in automaton.states}
    sym = {q: {} for q in automaton.states}
    for t, element in zip(automaton.transitions, elements):
        entry = (t, element, element == identity)
        if t.symbol is None:
            eps[t.src].append(entry)
        else:
            sym[t.src].setdefault(t.symbol, []).append(entry)
    return eps, sym


def _letter_budgets(automaton: GroupAutomaton, word: tuple):
    """Per-letter cancellation capacity for free-kind registers.

    Returns (suffix_caps, eps_caps) where suffix_caps[i][pos] bounds how many
    occurrences of basis letter i the remaining input can still add or
    remove, and eps_caps[i] is the per-step capacity of epsilon moves.  A
    register holding more occurrences of some letter than the remaining
    capacity can never return to the identity.  ``None`` for other kinds.
    """
    spec = automaton.spec
    if spec.kind != "free":
        return None
    rank = spec.param
    elements = automaton.label_elements()
    eps_caps = [0] * rank
    by_symbol = {}
    for t, element in zip(automaton.transitions, elements):
        occ = spec.letter_occurrences(element)
        if t.symbol is None:
            for i in range(rank):
                if occ[i] > eps_caps[i]:
                    eps_caps[i] = occ[i]
        else:
            cur = by_symbol.setdefault(t.symbol, [0] * rank)
            for i in range(rank):
                if occ[i] > cur[i]:
                    cur[i] = occ[i]
    n = len(word)
    suffix = [[0] * (n + 1) for _ in range(rank)]
    for pos in range(n - 1, -1, -1):
        caps = by_symbol.get(word[pos], [0] * rank)
        for i in range(rank):
            suffix[i][pos] = suffix[i][pos + 1] + caps[i]
    return suffix, eps_caps


def _completion_steps(automaton: GroupAutomaton, word: tuple) -> dict:
    """Least number of steps from (state, position) to any acceptance shape.

    Register contents are ignored, so this is an admissible lower bound used
    to prune configurations that can no longer accept within the budget.
    """
    n = len(word)
    eps_edges = {}
    sym_edges = {}
    for t in automaton.transitions:
        if t.symbol is None:
            eps_edges.setdefault(t.src, []).append(t.dst)
        else:
            sym_edges.setdefault((t.src, t.symbol), []).append(t.dst)
    INF = None
    dist = {}
    for q in automaton.accepting:
        dist[(q, n)] = 0
    # relax epsilon edges within a layer, then pull the next symbol layer
    for pos in range(n, -1, -1):
        changed = True
        while changed:
            changed = False
            for src, dsts in eps_edges.items():
                best = dist.get((src, pos))
                for dst in dsts:
                    d = dist.get((dst, pos))
                    if d is not None and (best is None or d + 1 < best):
                        best = d + 1
                        changed = True
                if best is not None:
                    dist[(src, pos)] = best
        if pos > 0:
            symbol = word[pos - 1]
            for (src, sym), dsts in sym_edges.items():
                if sym != symbol:
                    continue
                best = dist.get((src, pos - 1))
                for dst in dsts:
                    d = dist.get((dst, pos))
                    if d is not None and (best is None or d + 1 < best):
                        best = d + 1
                if best is not None:
                    dist[(src, pos - 1)] = best
    return dist


def run(automaton: GroupAutomaton, word: Sequence[str],
        budget: Optional[BudgetPolicy] = None,
        max_configs: int = DEFAULT_MAX_CONFIGS) -> RunResult:
    """Breadth-first budgeted search for an accepting run on ``word``."""
    word = tuple(word)
    alphabet = set(automaton.alphabet)
    for s in word:
        if s not in alphabet:
            raise GroupAutoError(f"input symbol {s!r} not in the automaton alphabet")
    budget = budget or BudgetPolicy.default()
    n = len(word)
    limit = budget.limit(n)
    if limit < n:
        return RunResult(Verdict.BUDGET_EXHAUSTED, word=word, limit=limit)

    spec = automaton.spec
    completion = _completion_steps(automaton, word)
    eps_moves, sym_moves = _moves(automaton)
    identity = spec.identity()
    mul = spec.mul
    reduced_length = spec.reduced_length
    completion_get = completion.get
    accepting = automaton.accepting
    label_max = max(automaton.label_gen_len_max, 1)
    letter_budgets = _letter_budgets(automaton, word)
    rank = spec.param if letter_budgets is not None else 0

    init = (automaton.initial, 0, identity)
    visited = {init: 0}
    registers_seen = {identity}
    parents = {}
    fully_explored = True

    def finish(accept_cfg, steps):
        trace = []
        cfg = accept_cfg
        while cfg in parents:
            prev, transition = parents[cfg]
            trace.append(transition)
            cfg = prev
        trace.reverse()
        return RunResult(Verdict.ACCEPTED, tuple(trace), len(visited),
                         len(registers_seen), steps, fully_explored=False,
                         word=word, limit=limit)

    if (automaton.initial in accepting and n == 0):
        return finish(init, 0)
    d0 = completion.get((automaton.initial, 0))
    if d0 is None or d0 > limit:
        frontier = []
    else:
        frontier = [init]

    steps = 0
    length_pruning = reduced_length(identity) is not None
    while frontier:
        steps += 1
        next_frontier = []
        for cfg in frontier:
            state, pos, register = cfg
            if pos < n:
                option_lists = (eps_moves[state], sym_moves[state].get(word[pos], ()))
            else:
                option_lists = (eps_moves[state],)
            for options in option_lists:
                for transition, element, is_identity_label in options:
                    pos2 = pos if transition.symbol is None else pos + 1
                    d = completion_get((transition.dst, pos2))
                    if d is None:
                        continue
                    if steps + d > limit:
                        fully_explored = False
                        continue
                    register2 = register if is_identity_label else mul(register, element)
                    if length_pruning:
                        reg_len = reduced_length(register2)
                        if reg_len is not None and steps + max(d, -(-reg_len // label_max)) > limit:
                            fully_explored = False
                            continue
                    if letter_budgets is not None:
                        suffix, eps_caps = letter_budgets
                        dead = clipped = False
                        for i in range(rank):
                            occ = 0
                            base = i + 1
                            for v in register2:
                                if v == base or v == -base:
                                    occ += 1
                            allowance = suffix[i][pos2]
                            if occ > allowance:
                                if eps_caps[i] == 0:
                                    dead = True
                                    break
                                if occ > allowance + (limit - steps) * eps_caps[i]:
                                    clipped = True
                                    break
                        if dead:
                            continue
                        if clipped:
                            fully_explored = False
                            continue
                    cfg2 = (transition.dst, pos2, register2)
                    if cfg2 in visited:
                        continue
                    visited[cfg2] = steps
                    registers_seen.add(register2)
                    parents[cfg2] = (cfg, transition)
                    if (pos2 == n and transition.dst in accepting
                            and register2 == identity):
                        return finish(cfg2, steps)
                    next_frontier.append(cfg2)
        if len(visited) > max_configs:
            raise CapExceeded(f"configuration cap {max_configs} exceeded")
        frontier = next_frontier

    return RunResult(Verdict.REJECTED_WITHIN_BUDGET, None, len(visited),
                     len(registers_seen), None, fully_explored=fully_explored,
                     word=word, limit=limit)


def replay(automaton: GroupAutomaton, trace: Sequence[Transition]):
    """Re-execute a trace; returns (final state, position, register)."""
    spec = automaton.spec
    state = automaton.initial
    pos = 0
    register = spec.identity()
    for t in trace:
        if t.src != state:
            raise GroupAutoError(f"trace breaks at {t}: not in state {t.src}")
        register = spec.mul(register, spec.eval_word(t.label))
        if t.symbol is not None:
            pos += 1
        state = t.dst
    return state, pos, register


# ---------------------------------------------------------------------------
# whole-language tables


def words_up_to(alphabet: Sequence[str], max_len: int, cap: int = DEFAULT_ENUM_CAP):
    """All words of length <= max_len in length-lexicographic order."""
    total = 0
    stack = [()]
    for length in range(max_len + 1):
        count = len(alphabet) ** length
        total += count
        if total > cap:
            raise CapExceeded(f"enumeration of {total} words exceeds cap {cap}")
    def gen():
        from itertools import product
        for length in range(max_len + 1):
            for word in product(alphabet, repeat=length):
                yield word
    return gen()


def enumerate_words(automaton: GroupAutomaton, max_len: int,
                    budget: Optional[BudgetPolicy] = None,
                    cap: int = DEFAULT_ENUM_CAP,
                    max_configs: int = DEFAULT_MAX_CONFIGS) -> list:
    """Run every word of length <= max_len; list of (word, RunResult)."""
    results = []
    for word in words_up_to(automaton.alphabet, max_len, cap):
        results.append((word, run(automaton, word, budget, max_configs)))
    return results


# ---------------------------------------------------------------------------
# audits


@dataclass
class WeakAuditEntry:
    word: tuple
    min_steps: Optional[int]
    limit: int
    within: Optional[bool]


@dataclass
class WeakAuditReport:
    """Minimum accepting-run lengths against a budget."""

    budget: BudgetPolicy
    entries: list = field(default_factory=list)

    @property
    def flagged(self) -> list:
        return [e for e in self.entries if e.within is False]


def audit_weak(automaton: GroupAutomaton, words: Sequence[Sequence[str]],
               budget: Optional[BudgetPolicy] = None,
               hard_policy: Optional[BudgetPolicy] = None,
               max_configs: int = DEFAULT_MAX_CONFIGS) -> WeakAuditReport:
    """Measure minimal accepting runs; flag words that need more than t(n).

    Words are searched under a larger ``hard_policy`` so that acceptances
    slower than the declared budget are still found and reported.
    """
    budget = budget or BudgetPolicy.default()
    if hard_policy is None:
        hard_policy = BudgetPolicy(4 * budget.alpha, 4 * budget.beta + 64)
    report = WeakAuditReport(budget)
    for word in words:
        word = tuple(word)
        limit = budget.limit(len(word))
        result = run(automaton, word, hard_policy, max_configs)
        if result.verdict is Verdict.ACCEPTED:
            within = result.min_accepting_steps <= limit
            report.entries.append(WeakAuditEntry(word, result.min_accepting_steps,
                                                 limit, within))
        else:
            report.entries.append(WeakAuditEntry(word, None, limit, None))
    return report


@dataclass
class StrongAuditReport:
    """Words with a computation longer than the budget allows."""

    budget: BudgetPolicy
    checked: int = 0
    violations: list = field(default_factory=list)  # (word, alive_at)


def audit_strong(automaton: GroupAutomaton, max_len: int,
                 budget: Optional[BudgetPolicy] = None,
                 cap: int = DEFAULT_ENUM_CAP,
                 max_configs: int = DEFAULT_MAX_CONFIGS) -> StrongAuditReport:
    """Find runs still alive after t(n) steps, over all words <= max_len.

    Walk sets are advanced level by level without cross-level deduplication:
    level k holds exactly the configurations reachable by some k-step run,
    so a non-empty level t(n)+1 witnesses a too-long computation.
    """
    budget = budget or BudgetPolicy.default()
    spec = automaton.spec
    eps_moves, sym_moves = _moves(automaton)
    mul = spec.mul
    report = StrongAuditReport(budget)
    for word in words_up_to(automaton.alphabet, max_len, cap):
        report.checked += 1
        n = len(word)
        limit = budget.limit(n)
        level = {(automaton.initial, 0, spec.identity())}
        alive = None
        for step in range(1, limit + 2):
            nxt = set()
            for state, pos, register in level:
                options = eps_moves[state]
                if pos < n:
                    options = options + sym_moves[state].get(word[pos], [])
                for transition, element, _ in options:
                    pos2 = pos if transition.symbol is None else pos + 1
                    nxt.add((transition.dst, pos2, mul(register, element)))
                    if len(nxt) > max_configs:
                        raise CapExceeded("strong audit level exceeded config cap")
            if not nxt:
                break
            level = nxt
            alive = step
        if alive is not None and alive > limit:
            report.violations.append((word, alive))
    return report


def reachable_registers(automaton: GroupAutomaton, steps: int,
                        max_configs: int = DEFAULT_MAX_CONFIGS) -> dict:
    """Registers reachable by any run of <= ``steps`` steps over any input.

    Input symbols are treated as a free choice at every transition.  Returns
    ``canonical key -> (element, minimal step count)``.
    """
    spec = automaton.spec
    elements = automaton.label_elements()
    mul = spec.mul
    identity = spec.identity()
    # level BFS with first-visit dedup: first visit has the minimal step count
    visited = {(automaton.initial, identity): 0}
    frontier = [(automaton.initial, identity)]
    by_state = {}
    for t, element in zip(automaton.transitions, elements):
        by_state.setdefault(t.src, []).append((t.dst, element))
    for step in range(1, steps + 1):
        nxt = []
        for state, register in frontier:
            for dst, element in by_state.get(state, ()):
                cfg = (dst, mul(register, element))
                if cfg not in visited:
                    visited[cfg] = step
                    nxt.append(cfg)
            if len(visited) > max_configs:
                raise CapExceeded("register reachability exceeded config cap")
        frontier = nxt
        if not frontier:
            break
    out = {}
    for (state, register), step in visited.items():
        key = spec.canonical_key(register)
        if key not in out or out[key][1] > step:
            out[key] = (register, step)
    return out
