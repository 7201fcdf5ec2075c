"""Automaton-to-automaton transformations.

Two families live here: homomorphic images under injective embeddings of the
register group (so the recognized language is preserved verbatim), and the
pushdown-to-free-group conversion that doubles every state into a push copy
and a pop copy, pads pushes with a fresh marker generator, and discharges the
markers through bounded epsilon loops.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    AlgebraError,
    GroupAutoError,
    GroupSpec,
    Matrix,
    HeisTriple,
    PolyFn,
    SANOV_A,
    SANOV_B,
    invert_word,
)
from .automaton import GroupAutomaton, Transition

EMBEDDING_NAMES = ("sanov", "diag", "block", "heis-abelian")


@dataclass
class Embedding:
    """Injective homomorphism described on generators.

    ``images`` maps each source generator name to a word over the target
    spec's generators; ``image_element`` maps whole source elements, which is
    what the sampled homomorphism/injectivity checks exercise.
    """

    name: str
    source: GroupSpec
    target: GroupSpec
    images: dict
    image_element: callable = field(repr=False, default=None)


def make_embedding(name: str, source: GroupSpec) -> Embedding:
    if name == "sanov":
        return _sanov_embedding(source)
    if name == "diag":
        return _diag_embedding(source)
    if name == "block":
        return _block_embedding(source)
    if name == "heis-abelian":
        return _heis_abelian_embedding(source)
    raise GroupAutoError(f"unknown embedding {name!r}; choose from {EMBEDDING_NAMES}")


def _sanov_embedding(source: GroupSpec) -> Embedding:
    """Free group of rank 2 into the integer matrices via [[1,2],[0,1]], [[1,0],[2,1]]."""
    if source.kind != "free" or source.param != 2:
        raise GroupAutoError("sanov embeds a rank-2 free group")
    gens = {name: _sanov_fold(element) for name, element in source.gens.items()}
    target = GroupSpec.matrix_z(2, gens=gens)
    images = {name: ((name, 1),) for name in source.gens}
    return Embedding("sanov", source, target, images, _sanov_fold)


def _diag_embedding(source: GroupSpec) -> Embedding:
    """Positive rationals into 2x2 rational matrices q -> diag(q, 1/q)."""
    if source.kind != "posrat":
        raise GroupAutoError("diag embeds the positive rationals")
    gens = {}
    for name, q in source.gens.items():
        gens[name] = Matrix.diagonal(q, 1 / q)
    target = GroupSpec.matrix_q(2, gens=gens)
    images = {name: ((name, 1),) for name in source.gens}
    return Embedding("diag", source, target, images,
                     lambda q: Matrix.diagonal(q, 1 / q))


def _block_embedding(source: GroupSpec) -> Embedding:
    """Product of two rank-2 free groups into 4x4 integer block matrices."""
    if (source.kind != "product"
            or source.param[0].kind != "free" or source.param[0].param != 2
            or source.param[1].kind != "free" or source.param[1].param != 2):
        raise GroupAutoError("block embeds a product of two rank-2 free groups")
    def image_element(pair):
        u, v = pair
        return Matrix.block_diag(_sanov_fold(u), _sanov_fold(v))

    gens = {name: image_element(element) for name, element in source.gens.items()}
    target = GroupSpec.matrix_z(4, gens=gens)
    images = {name: ((name, 1),) for name in source.gens}
    return Embedding("block", source, target, images, image_element)


def _sanov_fold(word) -> Matrix:
    table = {1: SANOV_A, 2: SANOV_B}
    acc = Matrix.identity(2)
    for v in word:
        m = table[abs(v)]
        acc = acc * (m if v > 0 else m.inverse())
    return acc


def _heis_abelian_embedding(source: GroupSpec) -> Embedding:
    """Rank-2 free abelian group onto the commuting pair (b, c) in Heisenberg."""
    if source.kind != "abelian" or source.param != 2:
        raise GroupAutoError("heis-abelian embeds a rank-2 free abelian group")
    target = GroupSpec.heisenberg().with_generators({
        "e1": HeisTriple(1, 0, 0),   # b
        "e2": HeisTriple(0, 0, 1),   # c
    })
    images = {"e1": (("e1", 1),), "e2": (("e2", 1),)}
    return Embedding("heis-abelian", source, target, images,
                     lambda v: HeisTriple(v[0], 0, v[1]))


def homomorphic_image(automaton: GroupAutomaton, embedding: Embedding) -> GroupAutomaton:
    """Relabel every transition through the embedding's generator images.

    States, alphabet, and the transition graph are untouched; because the
    embedding is injective, the register is the identity exactly when its
    image is, so the recognized language is preserved.
    """
    if automaton.spec != embedding.source:
        raise GroupAutoError(
            f"automaton register is {automaton.spec.describe()}, embedding "
            f"expects {embedding.source.describe()}")
    transitions = []
    for t in automaton.transitions:
        new_label = []
        for name, exp in t.label:
            if name not in embedding.images:
                raise GroupAutoError(f"embedding has no image for generator {name!r}")
            word = embedding.images[name]
            new_label.extend(word if exp == 1 else invert_word(word))
        transitions.append(Transition(t.src, t.symbol, t.dst, tuple(new_label)))
    return GroupAutomaton(embedding.target, automaton.states, automaton.alphabet,
                          transitions, automaton.initial, automaton.accepting)


@dataclass
class EmbeddingReport:
    name: str
    samples: int
    homomorphism_failures: int
    injectivity_failures: int

    @property
    def ok(self) -> bool:
        return self.homomorphism_failures == 0 and self.injectivity_failures == 0


def verify_embedding(embedding: Embedding, samples: int = 1000,
                     max_len: int = 8, seed: int = 0) -> EmbeddingReport:
    """Sampled check that products and identity are preserved and reflected."""
    rng = random.Random(seed)
    source = embedding.source
    target = embedding.target
    phi = embedding.image_element
    names = list(source.gens)
    hom_failures = 0
    inj_failures = 0
    if phi(source.identity()) != target.identity():
        inj_failures += 1
    for _ in range(samples):
        u = _random_element(source, names, rng, max_len)
        v = _random_element(source, names, rng, max_len)
        if phi(source.mul(u, v)) != target.mul(phi(u), phi(v)):
            hom_failures += 1
        if target.is_identity(phi(u)) and not source.is_identity(u):
            inj_failures += 1
    return EmbeddingReport(embedding.name, samples, hom_failures, inj_failures)


def _random_element(spec: GroupSpec, names, rng, max_len: int):
    word = []
    for _ in range(rng.randint(0, max_len)):
        word.append((rng.choice(names), rng.choice((1, -1))))
    return spec.eval_word(word)


# ---------------------------------------------------------------------------
# pushdown register to free-group register


def kambites_convert(automaton: GroupAutomaton) -> GroupAutomaton:
    """Convert a pushdown-register automaton to a free-group register.

    Requires an epsilon-free input whose labels are single pushes, single
    pops, or the identity (``split_labels`` reaches that form).  Each state q
    doubles into q+ and q-; pushes of stack symbol i become ``xi #`` from the
    plus copy, pops become ``xi^-1 #`` from the minus copy, and every minus
    copy carries a ``#^-1`` epsilon loop that discharges the padding markers.
    Runs re-enter the plus side on every pop, so the loop fires at most once
    per marker and accepted inputs keep a linear-time witness.
    """
    spec = automaton.spec
    if spec.kind != "polycyclic":
        raise GroupAutoError("conversion expects a pushdown (polycyclic) register")
    k = spec.param
    names = [f"x{i}" for i in range(1, k + 1)] + ["#"]
    target = GroupSpec.free(k + 1, names)
    pad = "#"

    plus = {q: f"{q}+" for q in automaton.states}
    minus = {q: f"{q}-" for q in automaton.states}
    states = [plus[q] for q in automaton.states] + [minus[q] for q in automaton.states]
    transitions = []
    for t in automaton.transitions:
        if t.symbol is None:
            raise GroupAutoError("input must be epsilon-free")
        element = spec.eval_word(t.label)
        kind, symbol_index = _classify_stack_label(element)
        if kind == "push":
            transitions.append(Transition(
                plus[t.src], t.symbol, plus[t.dst],
                ((f"x{symbol_index}", 1), (pad, 1))))
        elif kind == "pop":
            transitions.append(Transition(
                minus[t.src], t.symbol, plus[t.dst],
                ((f"x{symbol_index}", -1), (pad, 1))))
        else:
            transitions.append(Transition(plus[t.src], t.symbol, plus[t.dst], ()))
    for q in automaton.states:
        transitions.append(Transition(plus[q], None, minus[q], ()))
        transitions.append(Transition(minus[q], None, minus[q], ((pad, -1),)))

    return GroupAutomaton(target, states, automaton.alphabet, transitions,
                          plus[automaton.initial],
                          [minus[q] for q in automaton.accepting])


def _classify_stack_label(element: PolyFn):
    if not isinstance(element, PolyFn):
        raise GroupAutoError("stack label did not evaluate to a push/pop map")
    if element == PolyFn((), ()):
        return "identity", None
    if element.pop == () and element.push is not None and len(element.push) == 1:
        return "push", element.push[0]
    if element.push == () and element.pop is not None and len(element.pop) == 1:
        return "pop", element.pop[0]
    raise GroupAutoError(
        f"compound stack label {element!r}; run split_labels first")


def count_pad_discharges(trace) -> int:
    """Number of marker-discharging epsilon steps in a converted-run trace."""
    return sum(1 for t in trace
               if t.symbol is None and t.label == (("#", -1),))
