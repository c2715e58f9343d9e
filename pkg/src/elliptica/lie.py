"""Free graded Lie algebra L(W) embedded in the tensor algebra T(W).

Elements are sparse combinations of tensor words (tuples of generator
indices).  Brackets, per-degree Lie bases (left-normed spanning sets reduced
by exact rank), and degree -1 derivations all operate in this ambient
representation, so membership and rank questions reduce to linear algebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import DegreeMismatch

_ZERO = Fraction(0)
_ONE = Fraction(1)

Word = tuple[int, ...]  # generator indices, tensor factors left to right


@dataclass(frozen=True)
class LieGenerator:
    name: str
    degree: int
    index: int

    def __post_init__(self):
        if self.degree < 1:
            raise DegreeMismatch(f"generator {self.name} has degree {self.degree} < 1")


class LieElement:
    """Sparse rational combination of tensor words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "LieElement":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LieElement") -> "LieElement":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, _ZERO) + c
        return LieElement(t)

    def __sub__(self, other: "LieElement") -> "LieElement":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, _ZERO) - c
        return LieElement(t)

    def scale(self, c) -> "LieElement":
        c = Fraction(c)
        return LieElement({w: c * v for w, v in self.terms.items()})

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"LieElement({self.terms!r})"


class FreeLie:
    """The free graded Lie algebra on a list of generators."""

    def __init__(self, generators: Sequence[LieGenerator]):
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.generators = list(generators)
        self.by_index = {g.index: g for g in generators}
        self.by_name = {g.name: g for g in generators}
        self._word_cache: dict[int, list[Word]] = {}
        self._lie_cache: dict[int, tuple[list[LieElement], list[Word]]] = {}
        self._span_cache: dict[int, linalg.Span] = {}

    # --- degrees -----------------------------------------------------------

    def word_degree(self, w: Word) -> int:
        return sum(self.by_index[i].degree for i in w)

    def degree(self, e: LieElement) -> int:
        if e.is_zero():
            return 0
        degs = {self.word_degree(w) for w in e.terms}
        if len(degs) != 1:
            raise DegreeMismatch(f"mixed degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self, e: LieElement, degree: int) -> bool:
        return all(self.word_degree(w) == degree for w in e.terms)

    # --- constructors ------------------------------------------------------

    def gen(self, name: str) -> LieElement:
        g = self.by_name[name]
        return LieElement({(g.index,): _ONE})

    # --- bracket -----------------------------------------------------------

    def bracket(self, a: LieElement, b: LieElement) -> LieElement:
        """[a, b] = a (x) b - (-1)^(|a||b|) b (x) a, extended bilinearly."""
        out: dict[Word, Fraction] = {}
        for wa, ca in a.terms.items():
            da = self.word_degree(wa)
            for wb, cb in b.terms.items():
                db = self.word_degree(wb)
                c = ca * cb
                w1 = wa + wb
                out[w1] = out.get(w1, _ZERO) + c
                w2 = wb + wa
                out[w2] = out.get(w2, _ZERO) - ((-1) ** (da * db)) * c
        return LieElement(out)

    # --- tensor-word bases -------------------------------------------------

    def words(self, degree: int) -> list[Word]:
        """All tensor words of the given degree, lexicographic by index."""
        if degree in self._word_cache:
            return self._word_cache[degree]
        out: list[Word] = []
        gens = sorted(self.generators, key=lambda g: g.index)

        def rec(remaining: int, acc: list[int]):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for g in gens:
                if g.degree <= remaining:
                    acc.append(g.index)
                    rec(remaining - g.degree, acc)
                    acc.pop()

        if degree >= 1:
            rec(degree, [])
        self._word_cache[degree] = out
        return out

    def to_coords(self, degree: int, e: LieElement) -> linalg.Vector:
        idx = {w: j for j, w in enumerate(self.words(degree))}
        v = [_ZERO] * len(idx)
        for w, c in e.terms.items():
            if w not in idx:
                raise DegreeMismatch(f"word outside degree {degree}")
            v[idx[w]] = c
        return tuple(v)

    # --- Lie bases ---------------------------------------------------------

    def _sequences(self, degree: int) -> list[tuple[int, ...]]:
        # generator index sequences summing to the degree; same enumeration
        # as tensor words, which is what left-normed brackets are built from
        return self.words(degree)

    def left_normed(self, seq: Sequence[int]) -> LieElement:
        """[[...[g1, g2], g3], ..., gk] expanded in the tensor algebra."""
        e = LieElement({(seq[0],): _ONE})
        for i in seq[1:]:
            e = self.bracket(e, LieElement({(i,): _ONE}))
        return e

    def lie_basis_with_seqs(self, degree: int):
        """(basis elements, defining left-normed sequences) for L_degree."""
        if degree in self._lie_cache:
            return self._lie_cache[degree]
        words = self.words(degree)
        span = linalg.Span(len(words))
        basis: list[LieElement] = []
        seqs: list[Word] = []
        for seq in self._sequences(degree):
            e = self.left_normed(seq)
            if e.is_zero():
                continue
            if span.add(self.to_coords(degree, e)):
                basis.append(e)
                seqs.append(seq)
        self._lie_cache[degree] = (basis, seqs)
        self._span_cache[degree] = span
        return basis, seqs

    def lie_basis(self, degree: int) -> list[LieElement]:
        return self.lie_basis_with_seqs(degree)[0]

    def lie_dim(self, degree: int) -> int:
        return len(self.lie_basis(degree))

    def lie_coords(self, degree: int, e: LieElement) -> linalg.Vector | None:
        """Coordinates over lie_basis(degree), None if e is outside L(W)."""
        self.lie_basis_with_seqs(degree)
        span = self._span_cache[degree]
        if e.is_zero():
            return linalg.zero_vector(span.rank)
        return span.express(self.to_coords(degree, e))

    def from_lie_coords(self, degree: int, coords) -> LieElement:
        basis = self.lie_basis(degree)
        out = LieElement.zero()
        for c, b in zip(coords, basis):
            if c:
                out = out + b.scale(c)
        return out

    # --- derivations -------------------------------------------------------

    def derivation(self, images: Mapping[int, LieElement]) -> "LieDerivation":
        return LieDerivation(self, images)


class LieDerivation:
    """Degree -1 derivation of T(W) restricting to the bracket Leibniz rule."""

    def __init__(self, lie: FreeLie, images: Mapping[int, LieElement]):
        self.lie = lie
        self.images = {}
        for idx, img in images.items():
            g = lie.by_index[idx]
            if g.degree == 1:
                if not img.is_zero():
                    raise DegreeMismatch(
                        f"image of degree-1 generator {g.name} must be 0")
            elif not img.is_zero() and not lie.is_homogeneous(img, g.degree - 1):
                raise DegreeMismatch(
                    f"image of {g.name} is not homogeneous of degree {g.degree - 1}")
            self.images[idx] = img

    def _apply_word(self, w: Word) -> LieElement:
        lie = self.lie
        out: dict[Word, Fraction] = {}
        prefix_deg = 0
        for j, idx in enumerate(w):
            img = self.images.get(idx)
            if img is not None and not img.is_zero():
                sign = (-1) ** prefix_deg
                for u, c in img.terms.items():
                    word = w[:j] + u + w[j + 1:]
                    out[word] = out.get(word, _ZERO) + sign * c
            prefix_deg += lie.by_index[idx].degree
        return LieElement(out)

    def __call__(self, e: LieElement) -> LieElement:
        out = LieElement.zero()
        for w, c in e.terms.items():
            out = out + self._apply_word(w).scale(c)
        return out


def bracket(lie: FreeLie, a: LieElement, b: LieElement) -> LieElement:
    return lie.bracket(a, b)


def lie_basis(generators: Sequence[LieGenerator], degree: int) -> list[LieElement]:
    return FreeLie(generators).lie_basis(degree)


def lie_derivation_extend(lie: FreeLie, images: Mapping[int, LieElement],
                          e: LieElement) -> LieElement:
    return lie.derivation(images)(e)
