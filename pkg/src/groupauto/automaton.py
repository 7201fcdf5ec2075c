"""Validated automaton values and their line-oriented file format.

An automaton is the 6-tuple (states, alphabet, register spec, transitions,
initial state, accepting states).  Transition labels are stored as words
over the spec's named generators, never as raw elements, so a simulator can
bound register growth by label word length.  Inline element literals in
source files are bound to fresh generator names during parsing.

File format (full-line ``#`` comments only, so ``#`` stays usable as a
generator name)::

    group matrixq 2
    gen A1 = [[2,0],[1,1/2]]
    alphabet a b
    states q0 q1
    initial q0
    accept q1
    trans q0 a q1 : A1 A1^-1
    trans q0 eps q0 : _
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .algebra import (
    AlgebraError,
    GroupAutoError,
    GroupSpec,
    invert_word,
    looks_like_literal,
    parse_group_spec,
    parse_word_token,
    render_word,
)


class ParseError(GroupAutoError):
    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(GroupAutoError):
    pass


@dataclass(frozen=True)
class Transition:
    """One labelled edge; ``symbol`` is None for an epsilon move."""

    src: str
    symbol: Optional[str]
    dst: str
    label: tuple

    def sort_key(self):
        return (self.src, self.symbol or "", self.dst, self.label)

    def render(self) -> str:
        sym = self.symbol if self.symbol is not None else "eps"
        return f"trans {self.src} {sym} {self.dst} : {render_word(self.label)}"


@dataclass(frozen=True)
class Finding:
    severity: str  # "info" or "warn"
    code: str
    detail: str


class GroupAutomaton:
    """Immutable, validated automaton over a group or monoid register."""

    __slots__ = ("spec", "states", "alphabet", "transitions", "initial",
                 "accepting", "_hash")

    def __init__(self, spec: GroupSpec, states: Iterable[str],
                 alphabet: Iterable[str], transitions: Iterable[Transition],
                 initial: str, accepting: Iterable[str]):
        self.spec = spec
        self.states = tuple(states)
        self.alphabet = tuple(alphabet)
        self.transitions = tuple(transitions)
        self.initial = initial
        self.accepting = frozenset(accepting)
        self._hash = None
        self._validate()

    def _validate(self):
        states = set(self.states)
        if len(states) != len(self.states):
            raise ValidationError("duplicate state names")
        symbols = set(self.alphabet)
        if len(symbols) != len(self.alphabet):
            raise ValidationError("duplicate alphabet symbols")
        for reserved in ("eps", "_"):
            if reserved in symbols or reserved in states:
                raise ValidationError(f"{reserved!r} is reserved and cannot name a state or symbol")
        if self.initial not in states:
            raise ValidationError(f"initial state {self.initial!r} not declared")
        for q in self.accepting:
            if q not in states:
                raise ValidationError(f"accepting state {q!r} not declared")
        for t in self.transitions:
            if t.src not in states:
                raise ValidationError(f"transition uses unknown state {t.src!r}")
            if t.dst not in states:
                raise ValidationError(f"transition uses unknown state {t.dst!r}")
            if t.symbol is not None and t.symbol not in symbols:
                raise ValidationError(f"transition uses unknown symbol {t.symbol!r}")
            try:
                self.spec.eval_word(t.label)
            except AlgebraError as exc:
                raise ValidationError(f"bad label on {t.src}->{t.dst}: {exc}") from exc

    @property
    def label_gen_len_max(self) -> int:
        """Longest label word, the per-step generator budget of a run."""
        return max((len(t.label) for t in self.transitions), default=0)

    def label_elements(self) -> tuple:
        return _label_elements(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAutomaton):
            return NotImplemented
        return (self.spec == other.spec
                and set(self.states) == set(other.states)
                and set(self.alphabet) == set(other.alphabet)
                and set(self.transitions) == set(other.transitions)
                and self.initial == other.initial
                and self.accepting == other.accepting)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self.states),
                               frozenset(self.alphabet), frozenset(self.transitions),
                               self.initial, self.accepting))
        return self._hash

    def __repr__(self):
        return (f"GroupAutomaton({self.spec.describe()}, {len(self.states)} states, "
                f"{len(self.transitions)} transitions)")


@lru_cache(maxsize=256)
def _label_elements(automaton: GroupAutomaton) -> tuple:
    spec = automaton.spec
    return tuple(spec.eval_word(t.label) for t in automaton.transitions)


# ---------------------------------------------------------------------------
# parsing


def parse(text: str) -> GroupAutomaton:
    """Parse automaton source text, validating everything eagerly."""
    directives = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        directives.append((lineno, line))
    if not directives:
        raise ParseError("empty automaton source")

    spec: Optional[GroupSpec] = None
    extra_gens: dict = {}
    gen_lines = []
    alphabet: list = []
    states: list = []
    initial: Optional[str] = None
    accepting: list = []
    trans_lines = []

    first_lineno, first = directives[0]
    if not first.startswith("group "):
        raise ParseError("first directive must be 'group <kind> [params]'", first_lineno)
    try:
        spec = parse_group_spec(first[len("group "):])
    except AlgebraError as exc:
        raise ParseError(str(exc), first_lineno) from exc

    for lineno, line in directives[1:]:
        fields = line.split()
        head = fields[0]
        if head == "group":
            raise ParseError("duplicate group directive", lineno)
        elif head == "gen":
            rest = line[len("gen"):].strip()
            if "=" not in rest:
                raise ParseError("gen needs 'gen <name> = <element>'", lineno)
            name, _, rhs = rest.partition("=")
            gen_lines.append((lineno, name.strip(), rhs.strip()))
        elif head == "alphabet":
            alphabet.extend(fields[1:])
        elif head == "states":
            states.extend(fields[1:])
        elif head == "initial":
            if len(fields) != 2:
                raise ParseError("initial takes exactly one state", lineno)
            if initial is not None:
                raise ParseError("duplicate initial directive", lineno)
            initial = fields[1]
        elif head == "accept":
            accepting.extend(fields[1:])
        elif head == "trans":
            trans_lines.append((lineno, line))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno,
                             column=1)

    # bind declared generators in file order so later ones may reuse earlier
    for lineno, name, rhs in gen_lines:
        try:
            working = spec.with_generators(extra_gens)
            extra_gens[name] = working.parse_element(rhs)
            spec.with_generators(extra_gens)  # validates the new binding
        except AlgebraError as exc:
            raise ParseError(f"gen {name}: {exc}", lineno) from exc
    spec = spec.with_generators(extra_gens)

    if initial is None:
        raise ParseError("missing initial directive")

    transitions = []
    fresh_counter = 0
    for lineno, line in trans_lines:
        headpart, sep, labelpart = line.partition(":")
        if not sep:
            raise ParseError("trans needs ': <label word>'", lineno)
        fields = headpart.split()
        if len(fields) != 4:
            raise ParseError("trans needs 'trans <from> <symbol|eps> <to> : <label>'", lineno)
        _, src, symbol, dst = fields
        sym = None if symbol == "eps" else symbol
        tokens = labelpart.split()
        label = []
        if tokens != ["_"]:
            for token in tokens:
                if token == "_":
                    raise ParseError("'_' must stand alone as the identity label", lineno)
                if looks_like_literal(token):
                    try:
                        element = spec.parse_element(token)
                    except AlgebraError as exc:
                        raise ParseError(f"bad inline literal {token!r}: {exc}", lineno) from exc
                    if element is None:
                        raise ParseError(f"bad inline literal {token!r}", lineno)
                    name = f"_lit{fresh_counter}"
                    fresh_counter += 1
                    extra_gens[name] = element
                    spec = spec.with_generators(extra_gens)
                    label.append((name, 1))
                else:
                    try:
                        name, exp = parse_word_token(token)
                    except AlgebraError as exc:
                        raise ParseError(str(exc), lineno) from exc
                    if name not in spec.gens:
                        raise ParseError(f"unknown generator {name!r}", lineno,
                                         column=line.index(token) + 1)
                    label.append((name, exp))
        transitions.append((lineno, Transition(src, sym, dst, tuple(label))))

    seen = set()
    unique_transitions = []
    for _, t in transitions:
        if t not in seen:
            seen.add(t)
            unique_transitions.append(t)

    try:
        return GroupAutomaton(spec, states, alphabet, unique_transitions,
                              initial, accepting)
    except ValidationError as exc:
        # attribute structural errors to the offending trans line when possible
        for lineno, t in transitions:
            try:
                GroupAutomaton(spec, states, alphabet, [t], initial,
                               [q for q in accepting if q in states])
            except ValidationError:
                raise ParseError(str(exc), lineno) from exc
        raise ParseError(str(exc)) from exc


def parse_file(path) -> GroupAutomaton:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def serialize(automaton: GroupAutomaton) -> str:
    """Canonical text form: sorted states and transitions, byte-stable."""
    spec = automaton.spec
    lines = [f"group {spec.describe()}"]
    base = parse_group_spec(spec.describe())
    for name in sorted(spec.gens):
        element = spec.gens[name]
        if name in base.gens and base.gens[name] == element:
            continue
        lines.append(f"gen {name} = {spec.literal(element)}")
    if automaton.alphabet:
        lines.append("alphabet " + " ".join(sorted(automaton.alphabet)))
    lines.append("states " + " ".join(sorted(automaton.states)))
    lines.append(f"initial {automaton.initial}")
    if automaton.accepting:
        lines.append("accept " + " ".join(sorted(automaton.accepting)))
    for t in sorted(automaton.transitions, key=Transition.sort_key):
        lines.append(t.render())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural reports


def validate(automaton: GroupAutomaton) -> list:
    """Report-only structural findings; never mutates or raises."""
    findings = []
    forward = {}
    for t in automaton.transitions:
        forward.setdefault(t.src, []).append(t)

    reachable = _closure({automaton.initial}, lambda q: [t.dst for t in forward.get(q, ())])
    for q in sorted(set(automaton.states) - reachable):
        findings.append(Finding("warn", "unreachable", f"state {q} is unreachable"))

    backward = {}
    for t in automaton.transitions:
        backward.setdefault(t.dst, []).append(t.src)
    coreachable = _closure(set(automaton.accepting), lambda q: backward.get(q, ()))
    for q in sorted(reachable - coreachable):
        findings.append(Finding("info", "dead", f"state {q} cannot reach an accepting state"))

    spec = automaton.spec
    eps_edges = [(t, spec.eval_word(t.label)) for t in automaton.transitions
                 if t.symbol is None]
    eps_from = {}
    for t, element in eps_edges:
        eps_from.setdefault(t.src, []).append((t, element))
    reported = set()
    for start in sorted(eps_from):
        if start in reported:
            continue
        hit = _find_identity_eps_cycle(spec, start, eps_from, len(eps_edges))
        if hit is not None:
            reported.add(start)
            findings.append(Finding("warn", "identity-eps-cycle",
                                    f"epsilon cycle at {start} multiplies by the identity"))
        elif _on_eps_cycle(start, eps_from):
            findings.append(Finding("info", "eps-cycle",
                                    f"state {start} lies on a register-changing epsilon cycle"))
    return findings


def _closure(seed, neighbours):
    seen = set(seed)
    stack = list(seed)
    while stack:
        q = stack.pop()
        for dst in neighbours(q):
            if dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return seen


def _on_eps_cycle(start, eps_from) -> bool:
    stack = [start]
    seen = set()
    while stack:
        q = stack.pop()
        for t, _ in eps_from.get(q, ()):
            if t.dst == start:
                return True
            if t.dst not in seen:
                seen.add(t.dst)
                stack.append(t.dst)
    return False


def _find_identity_eps_cycle(spec, start, eps_from, max_depth):
    # depth-first over simple epsilon paths, tracking the label product
    identity = spec.identity()

    def walk(q, register, depth, visited):
        for t, element in eps_from.get(q, ()):
            product = spec.mul(register, element)
            if t.dst == start:
                if product == identity:
                    return True
            elif t.dst not in visited and depth < max_depth:
                if walk(t.dst, product, depth + 1, visited | {t.dst}):
                    return True
        return False

    return True if walk(start, identity, 0, {start}) else None


# ---------------------------------------------------------------------------
# label normal form


def split_labels(automaton: GroupAutomaton) -> GroupAutomaton:
    """Chain every multi-generator label through fresh states.

    A transition with an l-letter label becomes l transitions; the first one
    keeps the input symbol, the rest are epsilon moves with one letter each.
    Labels of length 0 or 1 are kept as is.
    """
    states = list(automaton.states)
    existing = set(states)
    transitions = []
    counter = 0
    for t in automaton.transitions:
        if len(t.label) <= 1:
            transitions.append(t)
            continue
        prev = t.src
        symbol = t.symbol
        for i, letter in enumerate(t.label):
            last = i == len(t.label) - 1
            if last:
                nxt = t.dst
            else:
                while True:
                    nxt = f"_s{counter}"
                    counter += 1
                    if nxt not in existing:
                        break
                existing.add(nxt)
                states.append(nxt)
            transitions.append(Transition(prev, symbol, nxt, (letter,)))
            symbol = None
            prev = nxt
    return GroupAutomaton(automaton.spec, states, automaton.alphabet,
                          transitions, automaton.initial, automaton.accepting)
