"""Exact algebra for the register groups and monoids of the workbench.

Every element is an immutable value held in a canonical form, so structural
equality coincides with group/monoid equality and ``canonical_key`` can be
used to deduplicate simulator configurations.  Supported kinds:

=============  ==============================================================
``trivial``    one-element group
``free r``     free group of rank r; elements are freely reduced words
``abelian k``  integer vectors of dimension k under addition
``posrat``     positive rationals under multiplication
``matrixz n``  n-by-n integer matrices with determinant +1 or -1
``matrixq n``  invertible n-by-n rational matrices
``heisenberg`` discrete Heisenberg group, normal-form triples (x, y, z)
``bs12``       Baumslag-Solitar group BS(1,2) as 2x2 rational matrices
``polycyclic`` monoid of partial push/pop maps on words over k stack symbols
``product``    direct product of two specs, componentwise operations
=============  ==============================================================

Integers and rationals are arbitrary precision throughout; register values
can grow exponentially during a run and nothing here is allowed to round.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence, Union

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

RATIONAL_ZERO = Rational(0)
RATIONAL_ONE = Rational(1)

_LETTERS = "abcdefghijklmnopqrstuvwxyz"

_INT_RE = re.compile(r"^[+-]?\d+$")
_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_VEC_RE = re.compile(r"^\([+-]?\d+(?:,[+-]?\d+)*\)$")
_HEIS_RE = re.compile(r"^\(([+-]?\d+),([+-]?\d+),([+-]?\d+)\)h$")
_NAME_RE = re.compile(r"^[A-Za-z#_][A-Za-z0-9_#']*$")


class GroupAutoError(Exception):
    """Base class for all workbench errors."""


class AlgebraError(GroupAutoError):
    """Raised on kind mismatches, invalid elements, or monoid inversion."""


class CapExceeded(GroupAutoError):
    """An exploration or enumeration exceeded its configured resource cap."""


# ---------------------------------------------------------------------------
# element values


class Matrix:
    """Immutable square matrix with exact rational entries."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: tuple):
        self.rows = rows
        self._hash = None

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        norm = tuple(tuple(Rational(e) for e in row) for row in rows)
        n = len(norm)
        if n == 0 or any(len(row) != n for row in norm):
            raise AlgebraError("matrix must be square and non-empty")
        return cls(norm)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(RATIONAL_ONE if i == j else RATIONAL_ZERO
                               for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, *entries) -> "Matrix":
        es = [Rational(e) for e in entries]
        return cls(tuple(tuple(es[i] if i == j else RATIONAL_ZERO
                               for j in range(len(es))) for i in range(len(es))))

    @classmethod
    def block_diag(cls, upper: "Matrix", lower: "Matrix") -> "Matrix":
        n, m = upper.dim, lower.dim
        rows = []
        for i in range(n):
            rows.append(upper.rows[i] + (RATIONAL_ZERO,) * m)
        for i in range(m):
            rows.append((RATIONAL_ZERO,) * n + lower.rows[i])
        return cls(tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.rows)
        return h

    def __repr__(self):
        return f"Matrix({self.literal()})"

    def __mul__(self, other: "Matrix") -> "Matrix":
        a, b = self.rows, other.rows
        n = len(a)
        if len(b) != n:
            raise AlgebraError("matrix dimension mismatch")
        if n == 2:
            (a00, a01), (a10, a11) = a
            (b00, b01), (b10, b11) = b
            return Matrix(((a00 * b00 + a01 * b10, a00 * b01 + a01 * b11),
                           (a10 * b00 + a11 * b10, a10 * b01 + a11 * b11)))
        rng = range(n)
        out = []
        for row in a:
            acc = []
            for j in rng:
                s = row[0] * b[0][j]
                for k in rng:
                    if k:
                        s += row[k] * b[k][j]
                acc.append(s)
            out.append(tuple(acc))
        return Matrix(tuple(out))

    def det(self):
        rows = [list(r) for r in self.rows]
        n = len(rows)
        det = RATIONAL_ONE
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
            if pivot is None:
                return RATIONAL_ZERO
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = -det
            det *= rows[col][col]
            inv = 1 / rows[col][col]
            for r in range(col + 1, n):
                factor = rows[r][col] * inv
                if factor != 0:
                    rows[r] = [rv - factor * cv for rv, cv in zip(rows[r], rows[col])]
        return det

    def inverse(self) -> "Matrix":
        n = self.dim
        aug = [list(row) + [RATIONAL_ONE if i == j else RATIONAL_ZERO
                            for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if pivot is None:
                raise AlgebraError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    factor = aug[r][col]
                    aug[r] = [rv - factor * cv for rv, cv in zip(aug[r], aug[col])]
        return Matrix(tuple(tuple(row[n:]) for row in aug))

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for row in self.rows for e in row)

    def literal(self) -> str:
        return "[" + ",".join(
            "[" + ",".join(_rat_str(e) for e in row) + "]" for row in self.rows) + "]"


class HeisTriple(NamedTuple):
    """Heisenberg normal form b^x a^y c^z; multiplication adds y*x' to z."""

    x: int
    y: int
    z: int


HEIS_IDENTITY = HeisTriple(0, 0, 0)


def heis_mul(s: HeisTriple, t: HeisTriple) -> HeisTriple:
    return HeisTriple(s.x + t.x, s.y + t.y, s.z + t.z + s.y * t.x)


def heis_inverse(s: HeisTriple) -> HeisTriple:
    return HeisTriple(-s.x, -s.y, -s.z + s.x * s.y)


def heis_to_matrix(s: HeisTriple) -> Matrix:
    """Embed a normal-form triple as an upper-unitriangular 3x3 matrix."""
    one, zero = RATIONAL_ONE, RATIONAL_ZERO
    return Matrix((
        (one, Rational(s.y), Rational(s.z)),
        (zero, one, Rational(s.x)),
        (zero, zero, one),
    ))


@dataclass(frozen=True)
class PolyFn:
    """Partial push/pop map on stack words: w+pop maps to w+push.

    ``pop is None`` denotes the empty-domain (zero) map, which is absorbing
    under composition.  The identity is ``PolyFn((), ())``; the restricted
    identity on words ending in x, ``PolyFn((x,), (x,))``, is a different
    element.
    """

    pop: Optional[tuple]
    push: Optional[tuple]

    def is_zero(self) -> bool:
        return self.pop is None


POLY_ZERO = PolyFn(None, None)
POLY_IDENTITY = PolyFn((), ())


def polyfn_mul(f: PolyFn, g: PolyFn) -> PolyFn:
    """Compose two push/pop maps, applying ``f`` first."""
    if f.pop is None or g.pop is None:
        return POLY_ZERO
    u1, v1 = f.pop, f.push
    u2, v2 = g.pop, g.push
    if len(v1) >= len(u2):
        cut = len(v1) - len(u2)
        if v1[cut:] == u2:
            return PolyFn(u1, v1[:cut] + v2)
        return POLY_ZERO
    cut = len(u2) - len(v1)
    if u2[cut:] == v1:
        return PolyFn(u2[:cut] + u1, v2)
    return POLY_ZERO


def free_mul(u: tuple, v: tuple) -> tuple:
    """Concatenate two freely reduced words, cancelling at the seam.

    Words are tuples of nonzero signed basis indices (+i / -i).
    """
    i = len(u)
    j = 0
    nv = len(v)
    while i > 0 and j < nv and u[i - 1] == -v[j]:
        i -= 1
        j += 1
    return u[:i] + v[j:]


def free_inverse(u: tuple) -> tuple:
    return tuple(-x for x in reversed(u))


def _rat_str(q) -> str:
    return str(q)


def inverse_symbol(name: str) -> str:
    """Alphabet symbol standing for the inverse of generator ``name``."""
    if len(name) == 1 and name.isalpha() and name.islower():
        return name.upper()
    return name + "'"


Element = Union[Matrix, HeisTriple, PolyFn, tuple, int, object]


# ---------------------------------------------------------------------------
# group/monoid specs

_KINDS = ("trivial", "free", "abelian", "posrat", "matrixz", "matrixq",
          "heisenberg", "bs12", "polycyclic", "product")

SANOV_A = Matrix.from_rows([[1, 2], [0, 1]])
SANOV_B = Matrix.from_rows([[1, 0], [2, 1]])
BS_A = Matrix.from_rows([[1, 0], [-1, 1]])
BS_B = Matrix.from_rows([[Rational(1, 2), 0], [0, 1]])

HEIS_A = HeisTriple(0, 1, 0)
HEIS_B = HeisTriple(1, 0, 0)
HEIS_C = HeisTriple(0, 0, 1)


class GroupSpec:
    """A register kind together with its named generator table.

    Instances are immutable; ``with_generators`` returns an extended copy.
    Transition labels and CLI words are words over the generator names, so
    every named generator must be a valid element of the kind.
    """

    __slots__ = ("kind", "param", "basis", "gens", "_key", "_identity")

    def __init__(self, kind, param=None, basis=(), gens=None):
        if kind not in _KINDS:
            raise AlgebraError(f"unknown group kind {kind!r}")
        self.kind = kind
        self.param = param
        self.basis = tuple(basis)
        self._identity = None
        table = dict(self._default_gens())
        if gens:
            for name, element in gens.items():
                if not _NAME_RE.match(name):
                    raise AlgebraError(f"invalid generator name {name!r}")
                self.validate_element(element)
                self._check_generator(element)
                table[name] = element
        self.gens = table
        parts = [self.describe()]
        defaults = dict(self._default_gens())
        for name in sorted(table):
            if name not in defaults or defaults[name] != table[name]:
                parts.append(f"{name}={self.literal(table[name])}")
        self._key = "\x1f".join(parts)

    # -- constructors

    @classmethod
    def trivial(cls) -> "GroupSpec":
        return cls("trivial")

    @classmethod
    def free(cls, rank: int, names: Sequence[str] = ()) -> "GroupSpec":
        if rank < 0:
            raise AlgebraError("free rank must be >= 0")
        if names:
            if len(names) != rank or len(set(names)) != rank:
                raise AlgebraError("free basis names must be distinct, one per rank")
            basis = tuple(names)
        else:
            basis = _default_free_basis(rank)
        return cls("free", rank, basis)

    @classmethod
    def abelian(cls, dim: int) -> "GroupSpec":
        if dim < 1:
            raise AlgebraError("abelian dimension must be >= 1")
        return cls("abelian", dim)

    @classmethod
    def posrat(cls, gens=None) -> "GroupSpec":
        return cls("posrat", gens=gens)

    @classmethod
    def matrix_z(cls, n: int, gens=None) -> "GroupSpec":
        return cls("matrixz", n, gens=gens)

    @classmethod
    def matrix_q(cls, n: int, gens=None) -> "GroupSpec":
        return cls("matrixq", n, gens=gens)

    @classmethod
    def heisenberg(cls) -> "GroupSpec":
        return cls("heisenberg")

    @classmethod
    def bs12(cls) -> "GroupSpec":
        return cls("bs12")

    @classmethod
    def polycyclic(cls, k: int) -> "GroupSpec":
        if k < 1:
            raise AlgebraError("polycyclic alphabet size must be >= 1")
        return cls("polycyclic", k)

    @classmethod
    def product(cls, left: "GroupSpec", right: "GroupSpec") -> "GroupSpec":
        return cls("product", (left, right))

    def with_generators(self, extra: dict) -> "GroupSpec":
        merged = {name: el for name, el in self.gens.items()}
        merged.update(extra)
        names = self.basis if self.kind == "free" else ()
        return GroupSpec(self.kind, self.param, names, merged)

    # -- defaults

    def _default_gens(self) -> Iterator[tuple]:
        kind = self.kind
        if kind == "free":
            for i, name in enumerate(self.basis, start=1):
                yield name, (i,)
        elif kind == "abelian":
            k = self.param
            for i in range(k):
                yield f"e{i + 1}", tuple(1 if j == i else 0 for j in range(k))
        elif kind == "heisenberg":
            yield "a", HEIS_A
            yield "b", HEIS_B
            yield "c", HEIS_C
        elif kind == "bs12":
            yield "A", BS_A
            yield "B", BS_B
        elif kind == "polycyclic":
            for i in range(1, self.param + 1):
                yield f"P{i}", PolyFn((), (i,))
            for i in range(1, self.param + 1):
                yield f"Q{i}", PolyFn((i,), ())
        elif kind == "product":
            left, right = self.param
            for name, g in left.gens.items():
                yield f"{name}1", (g, right.identity())
            for name, g in right.gens.items():
                yield f"{name}2", (left.identity(), g)

    # -- identity / predicates

    def is_group(self) -> bool:
        if self.kind == "polycyclic":
            return False
        if self.kind == "product":
            left, right = self.param
            return left.is_group() and right.is_group()
        return True

    def identity(self) -> Element:
        cached = self._identity
        if cached is None:
            cached = self._identity = self._compute_identity()
        return cached

    def _compute_identity(self) -> Element:
        kind = self.kind
        if kind in ("trivial", "free"):
            return ()
        if kind == "abelian":
            return (0,) * self.param
        if kind == "posrat":
            return RATIONAL_ONE
        if kind in ("matrixz", "matrixq"):
            return Matrix.identity(self.param)
        if kind == "bs12":
            return Matrix.identity(2)
        if kind == "heisenberg":
            return HEIS_IDENTITY
        if kind == "polycyclic":
            return POLY_IDENTITY
        left, right = self.param
        return (left.identity(), right.identity())

    def validate_element(self, x: Element) -> None:
        kind = self.kind
        ok = True
        if kind == "trivial":
            ok = x == ()
        elif kind == "free":
            ok = (isinstance(x, tuple)
                  and all(isinstance(v, int) and v != 0 and abs(v) <= self.param for v in x)
                  and all(x[i] != -x[i + 1] for i in range(len(x) - 1)))
        elif kind == "abelian":
            ok = (isinstance(x, tuple) and len(x) == self.param
                  and all(isinstance(v, int) for v in x))
        elif kind == "posrat":
            ok = isinstance(x, type(RATIONAL_ONE)) and x > 0
        elif kind in ("matrixz", "matrixq", "bs12"):
            n = 2 if kind == "bs12" else self.param
            ok = isinstance(x, Matrix) and x.dim == n
        elif kind == "heisenberg":
            ok = isinstance(x, HeisTriple)
        elif kind == "polycyclic":
            if not isinstance(x, PolyFn):
                ok = False
            elif not x.is_zero():
                ok = all(1 <= s <= self.param for s in x.pop + x.push)
        else:
            left, right = self.param
            if isinstance(x, tuple) and len(x) == 2:
                left.validate_element(x[0])
                right.validate_element(x[1])
            else:
                ok = False
        if not ok:
            raise AlgebraError(f"not a valid {self.describe()} element: {x!r}")

    def _check_generator(self, x: Element) -> None:
        # matrix kinds restrict generators to the group's defining predicate
        if self.kind == "matrixz":
            if not x.is_integral() or abs(x.det()) != 1:
                raise AlgebraError("matrixz generators need integer entries and determinant +-1")
        elif self.kind in ("matrixq", "bs12"):
            if x.det() == 0:
                raise AlgebraError("matrix generator is singular")

    # -- operations

    def mul(self, x: Element, y: Element) -> Element:
        kind = self.kind
        if kind in ("trivial", "free"):
            return free_mul(x, y)
        if kind == "abelian":
            return tuple(a + b for a, b in zip(x, y))
        if kind == "posrat":
            return x * y
        if kind in ("matrixz", "matrixq", "bs12"):
            return x * y
        if kind == "heisenberg":
            return heis_mul(x, y)
        if kind == "polycyclic":
            return polyfn_mul(x, y)
        left, right = self.param
        return (left.mul(x[0], y[0]), right.mul(x[1], y[1]))

    def inverse(self, x: Element) -> Element:
        kind = self.kind
        if kind == "polycyclic":
            raise AlgebraError("polycyclic registers live in a monoid; no inverses")
        if kind in ("trivial", "free"):
            return free_inverse(x)
        if kind == "abelian":
            return tuple(-v for v in x)
        if kind == "posrat":
            return 1 / x
        if kind in ("matrixz", "matrixq", "bs12"):
            return x.inverse()
        if kind == "heisenberg":
            return heis_inverse(x)
        left, right = self.param
        return (left.inverse(x[0]), right.inverse(x[1]))

    def is_identity(self, x: Element) -> bool:
        return x == self.identity()

    def literal(self, x: Element) -> str:
        """Canonical text rendering; also the basis of ``canonical_key``."""
        kind = self.kind
        if kind in ("trivial", "free"):
            if not x:
                return "_"
            return " ".join(self.basis[abs(v) - 1] + ("" if v > 0 else "^-1") for v in x)
        if kind == "abelian":
            return "(" + ",".join(str(v) for v in x) + ")"
        if kind == "posrat":
            return _rat_str(x)
        if kind in ("matrixz", "matrixq", "bs12"):
            return x.literal()
        if kind == "heisenberg":
            return f"({x.x},{x.y},{x.z})h"
        if kind == "polycyclic":
            if x.is_zero():
                return "ZERO"
            if x == POLY_IDENTITY:
                return "_"
            pops = [f"Q{s}" for s in reversed(x.pop)]
            pushes = [f"P{s}" for s in x.push]
            return " ".join(pops + pushes)
        left, right = self.param
        return f"({left.literal(x[0])}|{right.literal(x[1])})"

    def canonical_key(self, x: Element) -> bytes:
        return self.literal(x).encode()

    def letter_occurrences(self, x: Element) -> Optional[tuple]:
        """Occurrences of each basis letter (either sign) in a free-kind word.

        Any single multiplication by g removes or adds at most
        ``letter_occurrences(g)[i]`` occurrences of letter i, which makes
        these counts usable as admissible progress bounds.  ``None`` for
        kinds other than free.
        """
        if self.kind != "free":
            return None
        counts = [0] * self.param
        for v in x:
            counts[abs(v) - 1] += 1
        return tuple(counts)

    def reduced_length(self, x: Element) -> Optional[int]:
        """Exact generator length of ``x`` over the default basis, when known.

        Available for free, abelian, trivial, and products thereof; ``None``
        for kinds without a cheap closed form.
        """
        kind = self.kind
        if kind == "trivial":
            return 0
        if kind == "free":
            return len(x)
        if kind == "abelian":
            return sum(abs(v) for v in x)
        if kind == "product":
            left, right = self.param
            a = left.reduced_length(x[0])
            b = right.reduced_length(x[1])
            if a is None or b is None:
                return None
            return a + b
        return None

    # -- names and words

    def generator(self, name: str) -> Element:
        try:
            return self.gens[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r} in {self.describe()}") from None

    def eval_word(self, word: Sequence[tuple]) -> Element:
        """Left-to-right product of named generators and their inverses."""
        acc = self.identity()
        for name, exp in word:
            g = self.generator(name)
            if exp == 1:
                acc = self.mul(acc, g)
            elif exp == -1:
                acc = self.mul(acc, self.inverse(g))
            else:
                raise AlgebraError(f"exponent must be +1 or -1, got {exp}")
        return acc

    # -- literals

    def parse_element(self, text: str) -> Element:
        """Parse an element literal, falling back to a generator word."""
        text = text.strip()
        if text == "_":
            return self.identity()
        lit = self._parse_literal(text)
        if lit is not None:
            return lit
        word = parse_word(text)
        return self.eval_word(word)

    def _parse_literal(self, text: str) -> Optional[Element]:
        kind = self.kind
        compact = text.replace(" ", "")
        if kind == "posrat":
            if _RAT_RE.match(compact):
                value = Rational(compact)
                if value <= 0:
                    raise AlgebraError(f"positive rational required, got {compact}")
                return value
            return None
        if kind in ("matrixz", "matrixq", "bs12"):
            if compact.startswith("[["):
                m = _parse_matrix_literal(compact)
                self.validate_element(m)
                if kind == "matrixz":
                    self._check_generator(m)
                return m
            return None
        if kind == "heisenberg":
            match = _HEIS_RE.match(compact)
            if match:
                return HeisTriple(int(match.group(1)), int(match.group(2)),
                                  int(match.group(3)))
            return None
        if kind == "abelian":
            if _VEC_RE.match(compact):
                vec = tuple(int(v) for v in compact[1:-1].split(","))
                self.validate_element(vec)
                return vec
            return None
        if kind == "polycyclic":
            if compact == "ZERO":
                return POLY_ZERO
            return None
        if kind == "product":
            if compact.startswith("(") and compact.endswith(")"):
                split = _split_pair(compact[1:-1])
                if split is not None:
                    left, right = self.param
                    return (left.parse_element(split[0]), right.parse_element(split[1]))
            return None
        return None

    # -- description / identity of specs

    def describe(self) -> str:
        kind = self.kind
        if kind == "free":
            if self.basis != _default_free_basis(self.param):
                return f"free {self.param} " + " ".join(self.basis)
            return f"free {self.param}"
        if kind in ("abelian", "matrixz", "matrixq", "polycyclic"):
            return f"{kind} {self.param}"
        if kind == "product":
            left, right = self.param
            return f"product ({left.describe()}) ({right.describe()})"
        return kind

    def key(self) -> str:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupSpec) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"GroupSpec({self.describe()!r})"


# ---------------------------------------------------------------------------
# literal helpers


def _default_free_basis(rank: int) -> tuple:
    if rank <= len(_LETTERS):
        return tuple(_LETTERS[:rank])
    return tuple(f"x{i}" for i in range(1, rank + 1))


def _parse_matrix_literal(text: str) -> Matrix:
    if not (text.startswith("[[") and text.endswith("]]")):
        raise AlgebraError(f"bad matrix literal: {text}")
    body = text[2:-2]
    rows = body.split("],[")
    entries = []
    for row in rows:
        cells = row.split(",")
        parsed = []
        for cell in cells:
            if not _RAT_RE.match(cell):
                raise AlgebraError(f"bad matrix entry {cell!r} in {text}")
            parsed.append(Rational(cell))
        entries.append(parsed)
    return Matrix.from_rows(entries)


def _split_pair(body: str) -> Optional[tuple]:
    depth = 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "|" and depth == 0:
            return body[:i], body[i + 1:]
    return None


def parse_word(text: str) -> tuple:
    """Parse a generator word like ``a b^-1 #`` into ((name, exp), ...)."""
    letters = []
    for token in text.split():
        letters.append(parse_word_token(token))
    return tuple(letters)


def parse_word_token(token: str) -> tuple:
    if token.endswith("^-1"):
        name, exp = token[:-3], -1
    else:
        name, exp = token, 1
    if not _NAME_RE.match(name):
        raise AlgebraError(f"bad generator token {token!r}")
    return (name, exp)


def render_word(word: Sequence[tuple]) -> str:
    if not word:
        return "_"
    return " ".join(name + ("" if exp == 1 else "^-1") for name, exp in word)


def invert_word(word: Sequence[tuple]) -> tuple:
    return tuple((name, -exp) for name, exp in reversed(word))


def looks_like_literal(token: str) -> bool:
    """Tokens that cannot be generator names are inline element literals."""
    return token[0] in "[(0123456789-+" or token == "ZERO"


# ---------------------------------------------------------------------------
# spec-string parser ("free 2", "product (free 2) (free 2)", ...)


def parse_group_spec(text: str) -> GroupSpec:
    tokens = _tokenize_spec(text)
    spec, rest = _parse_spec_tokens(tokens)
    if rest:
        raise AlgebraError(f"trailing tokens in group spec: {' '.join(rest)}")
    return spec


def _tokenize_spec(text: str):
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _parse_spec_tokens(tokens):
    if not tokens:
        raise AlgebraError("empty group spec")
    head, rest = tokens[0], tokens[1:]
    if head == "(":
        spec, rest = _parse_spec_tokens(rest)
        if not rest or rest[0] != ")":
            raise AlgebraError("unbalanced parentheses in group spec")
        return spec, rest[1:]
    if head in ("trivial", "posrat", "heisenberg", "bs12"):
        return getattr(GroupSpec, head)(), rest
    if head == "free":
        if not rest or not _INT_RE.match(rest[0]):
            raise AlgebraError("free needs a rank")
        rank = int(rest[0])
        rest = rest[1:]
        names = []
        while rest and rest[0] not in ("(", ")") and _NAME_RE.match(rest[0]):
            names.append(rest[0])
            rest = rest[1:]
        return GroupSpec.free(rank, names), rest
    if head in ("abelian", "matrixz", "matrixq", "polycyclic"):
        if not rest or not _INT_RE.match(rest[0]):
            raise AlgebraError(f"{head} needs an integer parameter")
        n = int(rest[0])
        ctor = {"abelian": GroupSpec.abelian, "matrixz": GroupSpec.matrix_z,
                "matrixq": GroupSpec.matrix_q, "polycyclic": GroupSpec.polycyclic}[head]
        return ctor(n), rest[1:]
    if head == "product":
        left, rest = _parse_spec_tokens(rest)
        right, rest = _parse_spec_tokens(rest)
        return GroupSpec.product(left, right), rest
    raise AlgebraError(f"unknown group kind {head!r}")
