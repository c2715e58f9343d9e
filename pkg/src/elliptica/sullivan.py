"""Sullivan models: cochain complexes, cohomology, truncations, the spaces
L^i, and the Whitehead exact sequence on the commutative side."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .commutative import Algebra, Element, Generator, Monomial
from .errors import (DegreeMismatch, ExactnessFailure, InternalInconsistency,
                     TruncationNotClosed)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    representative: Element


@dataclass(frozen=True)
class ValidationIssue:
    check: str
    generator: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


@dataclass(frozen=True)
class WhiteheadNodeS:
    degree: int              # i
    dim_v: int               # dim V^i
    dim_l_next: int          # dim L^(i+1)
    dim_h_next: int          # dim H^(i+1)
    rank_b: int              # rank of b^i : V^i -> L^(i+1)
    rank_incl: int           # rank of L^(i+1) -> H^(i+1)


class SullivanModel:
    """A minimal simply connected Sullivan model (Lambda V, d).

    ``differential`` maps generator index -> Element (absent means zero).
    Models are immutable after construction; the cochain complex is memoized.
    """

    def __init__(self, generators: Sequence[Generator],
                 differential: Mapping[int, Element], name: str = ""):
        self.algebra = Algebra(generators)
        self.differential = {i: e for i, e in differential.items()
                             if not e.is_zero()}
        self.name = name
        self._complex: "CochainComplex" | None = None
        self._derivation = None
        self._trunc_cache: dict[int, "SullivanModel"] = {}

    @property
    def generators(self) -> list[Generator]:
        return self.algebra.generators

    def d(self, e: Element) -> Element:
        if self._derivation is None:
            self._derivation = self.algebra.derivation(self.differential)
        return self._derivation(e)

    def d_of_generator(self, idx: int) -> Element:
        return self.differential.get(idx, Element.zero())

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    # --- validation --------------------------------------------------------

    def validate(self, max_degree: int | None = None) -> ValidationReport:
        issues: list[ValidationIssue] = []
        alg = self.algebra
        for g in self.generators:
            if g.degree < 2:
                issues.append(ValidationIssue(
                    "simple-connectivity", g.name,
                    f"generator degree {g.degree} < 2 (V^1 must vanish)"))
        for idx, img in self.differential.items():
            g = alg.by_index[idx]
            if not alg.is_homogeneous(img, g.degree + 1):
                issues.append(ValidationIssue(
                    "homogeneity", g.name,
                    f"d({g.name}) is not homogeneous of degree {g.degree + 1}"))
                continue
            for m in img.terms:
                if sum(e for _, e in m) < 2:
                    issues.append(ValidationIssue(
                        "minimality", g.name,
                        f"d({g.name}) has a linear term"))
                    break
        if not any(i.check == "homogeneity" for i in issues):
            for idx in self.differential:
                g = alg.by_index[idx]
                if not self.d(self.differential[idx]).is_zero():
                    issues.append(ValidationIssue(
                        "d-squared", g.name, f"d(d({g.name})) != 0"))
        return ValidationReport(tuple(issues))

    # --- truncation --------------------------------------------------------

    def truncate(self, k: int) -> "SullivanModel":
        """Sub-model on the generators of degree <= k (indices preserved)."""
        k = min(k, self.max_generator_degree())
        if k in self._trunc_cache:
            return self._trunc_cache[k]
        keep = [g for g in self.generators if g.degree <= k]
        kept = {g.index for g in keep}
        diff = {}
        for g in keep:
            img = self.d_of_generator(g.index)
            for m in img.terms:
                if any(i not in kept for i, _ in m):
                    raise TruncationNotClosed(
                        f"d({g.name}) involves a generator of degree > {k}")
            if not img.is_zero():
                diff[g.index] = img
        sub = SullivanModel(keep, diff,
                            name=f"{self.name}[<={k}]" if self.name else "")
        self._trunc_cache[k] = sub
        return sub

    def complex(self) -> "CochainComplex":
        if self._complex is None:
            self._complex = CochainComplex(self)
        return self._complex

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"SullivanModel({self.name or gens})"


class CochainComplex:
    """Per-degree matrices and cohomology data of a Sullivan model."""

    def __init__(self, model: SullivanModel):
        self.model = model
        self._d_cache: dict[int, linalg.QMatrix] = {}
        self._coh_cache: dict[int, tuple[int, list[Element], list]] = {}
        self._class_cache: dict[int, tuple[linalg.QMatrix, int]] = {}

    def basis(self, degree: int) -> list[Monomial]:
        return self.model.algebra.basis(degree)

    def dim(self, degree: int) -> int:
        return len(self.basis(degree))

    def to_coords(self, degree: int, e: Element) -> linalg.Vector:
        idx = {m: j for j, m in enumerate(self.basis(degree))}
        v = [_ZERO] * len(idx)
        for m, c in e.terms.items():
            if m not in idx:
                raise DegreeMismatch(
                    f"element has a term outside degree {degree}")
            v[idx[m]] = c
        return tuple(v)

    def from_coords(self, degree: int, v: Sequence[Fraction]) -> Element:
        basis = self.basis(degree)
        return Element({basis[j]: c for j, c in enumerate(v) if c})

    def d_matrix(self, degree: int) -> linalg.QMatrix:
        """Matrix of d : degree -> degree + 1 in canonical monomial bases."""
        if degree in self._d_cache:
            return self._d_cache[degree]
        src = self.basis(degree)
        tgt = {m: j for j, m in enumerate(self.basis(degree + 1))}
        ent = {}
        for c, mono in enumerate(src):
            img = self.model.d(self.model.algebra.from_monomial(mono))
            for m, v in img.terms.items():
                ent[(tgt[m], c)] = v
        mat = linalg.QMatrix(len(tgt), len(src), ent)
        self._d_cache[degree] = mat
        return mat

    def cohomology(self, degree: int):
        """(dim, representatives as Elements, representative coord vectors)."""
        if degree in self._coh_cache:
            return self._coh_cache[degree]
        if degree < 0:
            result = (0, [], [])
        else:
            d_out = self.d_matrix(degree)
            cycles = linalg.kernel_basis(d_out)
            if degree == 0:
                boundaries: list[linalg.Vector] = []
            else:
                d_in = self.d_matrix(degree - 1)
                if not d_out.matmul(d_in).is_zero():
                    from .errors import CompositionNotZero
                    raise CompositionNotZero(f"d.d != 0 at degree {degree}")
                boundaries = linalg.independent_subset(d_in.columns(), d_in.rows)
            reps_v = linalg.quotient_representatives(cycles, boundaries)
            reps = [self.from_coords(degree, v) for v in reps_v]
            result = (len(reps), reps, reps_v)
        self._coh_cache[degree] = result
        return result

    def betti(self, degree: int) -> int:
        return self.cohomology(degree)[0]

    def class_coords(self, degree: int, e: Element) -> linalg.Vector | None:
        """Coordinates of [e] over the representative basis of H^degree.

        Returns None when e is not a cocycle of that degree.
        """
        z = self.to_coords(degree, e)
        if any(self.d_matrix(degree).apply(z)):
            return None
        _, _, reps_v = self.cohomology(degree)
        if degree not in self._class_cache:
            cols = list(reps_v)
            nb = 0
            if degree > 0:
                d_in = self.d_matrix(degree - 1)
                bcols = linalg.independent_subset(d_in.columns(), d_in.rows)
                cols = cols + bcols
                nb = len(bcols)
            mat = linalg.QMatrix.from_columns(cols, self.dim(degree))
            self._class_cache[degree] = (mat, len(reps_v))
        mat, nreps = self._class_cache[degree]
        sol = linalg.solve(mat, z)
        if sol is None:
            raise InternalInconsistency("cocycle not in span of reps + boundaries")
        return sol[:nreps]


# --- module-level operations matching the engine surface ---------------------

def validate(model: SullivanModel, max_degree: int | None = None) -> ValidationReport:
    return model.validate(max_degree)


def cohomology(model: SullivanModel, degree: int):
    """(dim, list of CohomologyClass) of H^degree(Lambda V)."""
    dim, reps, _ = model.complex().cohomology(degree)
    return dim, [CohomologyClass(degree, r) for r in reps]


def truncate(model: SullivanModel, k: int) -> SullivanModel:
    return model.truncate(k)


def L_space(model: SullivanModel, i: int):
    """(dim, classes) of L^i = H^i(Lambda(V^(<= i-2)))."""
    if i < 2:
        raise ValueError("L^i defined for i >= 2")
    t = model.truncate(i - 2)
    dim, reps, _ = t.complex().cohomology(i)
    return dim, [CohomologyClass(i, r) for r in reps]


def L_dim(model: SullivanModel, i: int) -> int:
    return L_space(model, i)[0]


def whitehead_b(model: SullivanModel, i: int) -> linalg.QMatrix:
    """Matrix of b^i : V^i -> L^(i+1), v |-> [d v] in the truncation."""
    t = model.truncate(i - 1)
    tc = t.complex()
    ldim, _, _ = tc.cohomology(i + 1)
    v_gens = [g for g in model.generators if g.degree == i]
    ent = {}
    for c, g in enumerate(v_gens):
        dv = model.d_of_generator(g.index)
        coords = tc.class_coords(i + 1, dv)
        if coords is None:
            raise InternalInconsistency(
                f"d({g.name}) is not a cocycle of the truncation")
        for r, val in enumerate(coords):
            if val:
                ent[(r, c)] = val
    return linalg.QMatrix(ldim, len(v_gens), ent)


def tensor_product(a: SullivanModel, b: SullivanModel,
                   name: str = "") -> SullivanModel:
    """Tensor CDGA of two Sullivan models: disjoint generators, differentials
    unchanged.  Name collisions get a suffix on the right factor."""
    taken = {g.name for g in a.generators}
    gens = list(a.generators)
    remap: dict[int, int] = {}
    renamed: dict[str, str] = {}
    next_index = max((g.index for g in a.generators), default=-1) + 1
    for g in b.generators:
        new_name = g.name
        while new_name in taken:
            new_name += "_r"
        taken.add(new_name)
        renamed[g.name] = new_name
        remap[g.index] = next_index
        gens.append(Generator(new_name, g.degree, next_index))
        next_index += 1
    diff = dict(a.differential)
    for idx, img in b.differential.items():
        terms = {}
        for m, c in img.terms.items():
            terms[tuple(sorted((remap[i], e) for i, e in m))] = c
        diff[remap[idx]] = Element(terms)
    if not name and a.name and b.name:
        name = f"{a.name}x{b.name}"
    return SullivanModel(gens, diff, name=name)


@dataclass(frozen=True)
class WhiteheadReportS:
    nodes: tuple[WhiteheadNodeS, ...]
    max_degree: int
    exact: bool = True


def whitehead_sequence(model: SullivanModel, max_degree: int) -> WhiteheadReportS:
    """Assemble sequence H^i -> V^i -> L^(i+1) -> H^(i+1) -> ... and check
    im = ker at every node (ExactnessFailure on any breach)."""
    full = model.complex()
    v_gens_by_deg: dict[int, list[Generator]] = {}
    for g in model.generators:
        v_gens_by_deg.setdefault(g.degree, []).append(g)

    def linear_part_matrix(i: int) -> linalg.QMatrix:
        """H^i -> V^i: class |-> coefficients of its linear part."""
        _, reps, _ = full.cohomology(i)
        vg = v_gens_by_deg.get(i, [])
        pos = {g.index: r for r, g in enumerate(vg)}
        ent = {}
        for c, rep in enumerate(reps):
            for m, val in rep.terms.items():
                if len(m) == 1 and m[0][1] == 1 and m[0][0] in pos:
                    ent[(pos[m[0][0]], c)] = val
        return linalg.QMatrix(len(vg), len(reps), ent)

    def incl_matrix(i: int) -> linalg.QMatrix:
        """L^(i+1) -> H^(i+1), induced by inclusion of the truncation."""
        t = model.truncate(i - 1)
        _, reps, _ = t.complex().cohomology(i + 1)
        hdim, _, _ = full.cohomology(i + 1)
        ent = {}
        for c, rep in enumerate(reps):
            coords = full.class_coords(i + 1, rep)
            if coords is None:
                raise InternalInconsistency("truncation class is not a cocycle")
            for r, val in enumerate(coords):
                if val:
                    ent[(r, c)] = val
        return linalg.QMatrix(hdim, len(reps), ent)

    def check(node: str, incoming: linalg.QMatrix, outgoing: linalg.QMatrix):
        if not outgoing.matmul(incoming).is_zero():
            raise ExactnessFailure(f"composite nonzero at {node}")
        if linalg.rank(incoming) != incoming.rows - linalg.rank(outgoing):
            raise ExactnessFailure(f"im != ker at {node}")

    nodes: list[WhiteheadNodeS] = []
    p = {i: linear_part_matrix(i) for i in range(2, max_degree + 2)}
    b = {i: whitehead_b(model, i) for i in range(2, max_degree + 1)}
    q = {i: incl_matrix(i) for i in range(2, max_degree + 1)}
    for i in range(2, max_degree + 1):
        check(f"V^{i}", p[i], b[i])
        check(f"L^{i + 1}", b[i], q[i])
        check(f"H^{i + 1}", q[i], p[i + 1])
        nodes.append(WhiteheadNodeS(
            degree=i,
            dim_v=len(v_gens_by_deg.get(i, [])),
            dim_l_next=q[i].cols,
            dim_h_next=q[i].rows,
            rank_b=linalg.rank(b[i]),
            rank_incl=linalg.rank(q[i]),
        ))
    return WhiteheadReportS(tuple(nodes), max_degree)
