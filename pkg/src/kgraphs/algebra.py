"""The convolution *-algebra of a finite path groupoid.

Finitely supported complex functions on the groupoid form a *-algebra under
convolution; vertex functions and edge functions of a rank-1 graph represent
into it as unit-supported multipliers and degree-1 partial isometries.  The
module verifies, numerically and at finite scale, the defining identities of
Toeplitz and Cuntz-Krieger families, the gauge action, the quotient onto the
boundary groupoid, and that the generators span the whole algebra.

Convolution iterates supports in ascending element order, so restricting a
product to the boundary groupoid reproduces the product of the restrictions
bit for bit: the quotient check is exact, not approximate.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .skeleton import Degree, Skeleton
from . import paths as pth
from .boundary import classify_vertices
from .groupoid import FiniteGroupoid

DEFAULT_TOL = 1e-9
DEFAULT_SEED = 0


class AlgebraElement:
    """A finitely supported function on a groupoid's elements."""

    def __init__(self, groupoid: FiniteGroupoid, coefficients: dict[int, complex]):
        self.groupoid = groupoid
        self.coefficients = {
            i: complex(c) for i, c in sorted(coefficients.items()) if c != 0
        }

    @classmethod
    def zero(cls, G: FiniteGroupoid) -> AlgebraElement:
        return cls(G, {})

    @classmethod
    def delta(cls, G: FiniteGroupoid, label, coeff: complex = 1.0) -> AlgebraElement:
        return cls(G, {G.index_of(label): coeff})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.groupoid is other.groupoid
            and self.coefficients == other.coefficients
        )

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _check_same_groupoid(self, other)
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, 0j) + c
        return AlgebraElement(self.groupoid, out)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + other.scale(-1)

    def scale(self, c: complex) -> AlgebraElement:
        return AlgebraElement(self.groupoid, {i: c * v for i, v in self.coefficients.items()})

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coefficients.values()), default=0.0)

    def to_json(self) -> list:
        out = []
        for i, c in sorted(self.coefficients.items()):
            g = self.groupoid.elements[i]
            out.append([g.x, list(g.m), g.y, c.real, c.imag])
        return out

    def to_vector(self) -> np.ndarray:
        vec = np.zeros(len(self.groupoid.elements), dtype=complex)
        for i, c in self.coefficients.items():
            vec[i] = c
        return vec

    @classmethod
    def from_vector(cls, G: FiniteGroupoid, vec: np.ndarray) -> AlgebraElement:
        return cls(G, {i: complex(c) for i, c in enumerate(vec) if c != 0})


def _check_same_groupoid(f: AlgebraElement, g: AlgebraElement) -> None:
    if f.groupoid is not g.groupoid:
        raise ValueError("elements live on different groupoids")


def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """(f * g)(gamma) = sum of f(a) g(b) over factorizations a.b = gamma."""
    _check_same_groupoid(f, g)
    G = f.groupoid
    right = list(g.coefficients.items())
    acc: dict[int, complex] = {}
    for ia, ca in f.coefficients.items():
        a = G.elements[ia]
        for ib, cb in right:
            b = G.elements[ib]
            if a.y != b.x:
                continue
            label = (a.x, tuple(p + q for p, q in zip(a.m, b.m)), b.y)
            idx = G.index_of(label)
            acc[idx] = acc.get(idx, 0j) + ca * cb
    return AlgebraElement(G, acc)


def involution(f: AlgebraElement) -> AlgebraElement:
    """f*(x, m, y) = conj(f(y, -m, x))."""
    G = f.groupoid
    out: dict[int, complex] = {}
    for i, c in f.coefficients.items():
        g = G.elements[i]
        out[G.index_of((g.y, tuple(-a for a in g.m), g.x))] = c.conjugate()
    return AlgebraElement(G, out)


def i_norm(f: AlgebraElement) -> float:
    """Max over units of the larger fiberwise l1 sum (range or source fiber)."""
    G = f.groupoid
    by_range: dict[int, float] = {}
    by_source: dict[int, float] = {}
    for i, c in f.coefficients.items():
        g = G.elements[i]
        by_range[g.x] = by_range.get(g.x, 0.0) + abs(c)
        by_source[g.y] = by_source.get(g.y, 0.0) + abs(c)
    sums = list(by_range.values()) + list(by_source.values())
    return max(sums, default=0.0)


@dataclass(frozen=True)
class VertexFunction:
    """A finitely supported complex function on vertices."""

    values: dict[str, complex]

    def __post_init__(self):
        pruned = {v: complex(c) for v, c in self.values.items() if c != 0}
        object.__setattr__(self, "values", pruned)

    @classmethod
    def delta(cls, vertex_id: str, coeff: complex = 1.0) -> VertexFunction:
        return cls({vertex_id: complex(coeff)})

    @classmethod
    def indicator(cls, vertex_ids) -> VertexFunction:
        return cls({v: 1.0 for v in vertex_ids})

    def __call__(self, vertex_id: str) -> complex:
        return self.values.get(vertex_id, 0j)

    def support(self) -> frozenset[str]:
        return frozenset(v for v, c in self.values.items() if c != 0)


@dataclass(frozen=True)
class EdgeFunction:
    """A finitely supported complex function on edges."""

    values: dict[str, complex]

    def __post_init__(self):
        pruned = {e: complex(c) for e, c in self.values.items() if c != 0}
        object.__setattr__(self, "values", pruned)

    @classmethod
    def delta(cls, edge_id: str, coeff: complex = 1.0) -> EdgeFunction:
        return cls({edge_id: complex(coeff)})

    def __call__(self, edge_id: str) -> complex:
        return self.values.get(edge_id, 0j)


def vertex_operator(G: FiniteGroupoid, f: VertexFunction) -> AlgebraElement:
    """Represent a vertex function on the units: value f(r(x)) at (x, 0, x)."""
    out: dict[int, complex] = {}
    for path_idx, elem_idx in sorted(G.unit_index.items()):
        c = f(G.space.elements[path_idx].path.range)
        if c != 0:
            out[elem_idx] = c
    return AlgebraElement(G, out)


def _require_rank_one(G: FiniteGroupoid) -> Skeleton:
    sk = G.space.skeleton
    if sk.rank != 1:
        raise ValueError(f"operation needs a rank-1 graph, skeleton has rank {sk.rank}")
    return sk


def edge_operator(G: FiniteGroupoid, xi: EdgeFunction) -> AlgebraElement:
    """Represent an edge function: value xi(first edge of x) at (x, 1, tail of x)."""
    sk = _require_rank_one(G)
    out: dict[int, complex] = {}
    one = Degree((1,))
    for i, el in enumerate(G.space.elements):
        if el.path.degree.total < 1:
            continue
        first = el.path.word[0]
        c = xi(first)
        if c == 0:
            continue
        tail = pth.factorize(sk, el.path, one)[1]
        label = (i, (1,), G.space.index_of(tail))
        out[G.index_of(label)] = c
    return AlgebraElement(G, out)


def inner_product(sk: Skeleton, xi: EdgeFunction, eta: EdgeFunction) -> VertexFunction:
    """<xi, eta>(v) = sum over edges sourced at v of conj(xi(e)) eta(e)."""
    values: dict[str, complex] = {}
    for v in sk.vertices:
        total = 0j
        for e in sk.edges_by_source[v.id]:
            total += xi(e.id).conjugate() * eta(e.id)
        if total != 0:
            values[v.id] = total
    return VertexFunction(values)


def left_action(sk: Skeleton, f: VertexFunction, xi: EdgeFunction) -> EdgeFunction:
    """(f . xi)(e) = f(r(e)) xi(e)."""
    return EdgeFunction(
        {e: f(sk.edge_by_id[e].range) * c for e, c in xi.values.items() if c != 0}
    )


def right_action(sk: Skeleton, xi: EdgeFunction, f: VertexFunction) -> EdgeFunction:
    """(xi . f)(e) = xi(e) f(s(e))."""
    return EdgeFunction(
        {e: c * f(sk.edge_by_id[e].source) for e, c in xi.values.items() if c != 0}
    )


@dataclass(frozen=True)
class BimoduleOperator:
    """An operator on edge functions given by a finitely supported matrix."""

    matrix: dict[tuple[str, str], complex]

    def apply(self, zeta: EdgeFunction) -> EdgeFunction:
        out: dict[str, complex] = {}
        for (e, e2), c in self.matrix.items():
            term = c * zeta(e2)
            if term != 0:
                out[e] = out.get(e, 0j) + term
        return EdgeFunction({e: c for e, c in out.items() if c != 0})

    def __add__(self, other: BimoduleOperator) -> BimoduleOperator:
        out = dict(self.matrix)
        for key, c in other.matrix.items():
            out[key] = out.get(key, 0j) + c
        return BimoduleOperator({k: c for k, c in out.items() if c != 0})

    def __sub__(self, other: BimoduleOperator) -> BimoduleOperator:
        return self + BimoduleOperator({k: -c for k, c in other.matrix.items()})

    def max_abs(self) -> float:
        return max((abs(c) for c in self.matrix.values()), default=0.0)


def rank_one_operator(sk: Skeleton, xi: EdgeFunction, eta: EdgeFunction) -> BimoduleOperator:
    """xi (x) eta*: matrix xi(e) conj(eta(e')) over pairs with a common source."""
    matrix: dict[tuple[str, str], complex] = {}
    for e, ce in xi.values.items():
        for e2, ce2 in eta.values.items():
            if sk.edge_by_id[e].source != sk.edge_by_id[e2].source:
                continue
            c = ce * ce2.conjugate()
            if c != 0:
                matrix[(e, e2)] = c
    return BimoduleOperator(matrix)


def left_mult_operator(sk: Skeleton, f: VertexFunction) -> BimoduleOperator:
    """Left multiplication by a vertex function: diagonal f(r(e))."""
    matrix = {}
    for e in sk.edges:
        c = f(e.range)
        if c != 0:
            matrix[(e.id, e.id)] = c
    return BimoduleOperator(matrix)


def rank_one_decomposition(
    sk: Skeleton, f: VertexFunction
) -> list[tuple[EdgeFunction, EdgeFunction]]:
    """Write left multiplication by f as a sum of rank-one operators.

    One pair per edge in the support of f o r: (f(r(e)) delta_e, delta_e).
    The construction is checked before returning: f o r is the pointwise sum
    of the products xi_i conj(eta_i), distinct same-source edges never mix,
    and the operator sum reproduces left multiplication exactly.
    """
    if not f.support() <= set(classify_vertices(sk).regular):
        warnings.warn(
            "vertex function is not supported on regular vertices; the "
            "Cuntz-Krieger identity is not expected to hold for it",
            stacklevel=2,
        )
    pairs: list[tuple[EdgeFunction, EdgeFunction]] = []
    for e in sk.edges:
        c = f(e.range)
        if c != 0:
            pairs.append((EdgeFunction({e.id: c}), EdgeFunction.delta(e.id)))

    for e in sk.edges:
        total = sum(xi(e.id) * eta(e.id).conjugate() for xi, eta in pairs)
        if total != f(e.range):
            raise AssertionError("pointwise product identity failed")
    for xi, eta in pairs:
        for e in sk.edges:
            for e2 in sk.edges:
                if e.id != e2.id and e.source == e2.source:
                    if xi(e.id) * eta(e2.id).conjugate() != 0:
                        raise AssertionError("cross-term orthogonality failed")
    total_op = BimoduleOperator({})
    for xi, eta in pairs:
        total_op = total_op + rank_one_operator(sk, xi, eta)
    if (total_op - left_mult_operator(sk, f)).max_abs() != 0.0:
        raise AssertionError("operator sum does not reproduce left multiplication")
    return pairs


def rank_one_lift(G: FiniteGroupoid, pairs) -> AlgebraElement:
    """Lift a sum of rank-one operators: sum of S(xi) S(eta)*."""
    out = AlgebraElement.zero(G)
    for xi, eta in pairs:
        out = out + convolve(edge_operator(G, xi), involution(edge_operator(G, eta)))
    return out


def quotient_restrict(f: AlgebraElement, boundary_G: FiniteGroupoid) -> AlgebraElement:
    """Restrict coefficients to elements whose endpoints are boundary paths."""
    G = f.groupoid
    bspace = boundary_G.space
    out: dict[int, complex] = {}
    for i, c in f.coefficients.items():
        g = G.elements[i]
        xpath = G.space.elements[g.x].path
        ypath = G.space.elements[g.y].path
        if xpath in bspace and ypath in bspace:
            label = (bspace.index_of(xpath), g.m, bspace.index_of(ypath))
            out[boundary_G.index_of(label)] = c
    return AlgebraElement(boundary_G, out)


def gauge_automorphism(f: AlgebraElement, t) -> AlgebraElement:
    """Scale the coefficient at (x, m, y) by the monomial t^m; |t_c| must be 1."""
    k = f.groupoid.rank
    ts = (complex(t),) if np.isscalar(t) else tuple(complex(c) for c in t)
    if len(ts) != k:
        raise ValueError(f"expected {k} circle parameters, got {len(ts)}")
    for c in ts:
        if abs(abs(c) - 1.0) > DEFAULT_TOL:
            raise ValueError(f"gauge parameter {c} is not on the unit circle")
    G = f.groupoid
    out: dict[int, complex] = {}
    for i, coeff in f.coefficients.items():
        m = G.elements[i].m
        scale = 1 + 0j
        for base, power in zip(ts, m):
            # Negative powers of a circle parameter via the conjugate keeps
            # the scaling exactly unimodular and involution-equivariant.
            scale *= base.conjugate() ** (-power) if power < 0 else base**power
        out[i] = scale * coeff
    return AlgebraElement(G, out)


def homogeneous_component(f: AlgebraElement, level: tuple[int, ...]) -> AlgebraElement:
    G = f.groupoid
    return AlgebraElement(
        G, {i: c for i, c in f.coefficients.items() if G.elements[i].m == tuple(level)}
    )


def support_levels(f: AlgebraElement) -> set[tuple[int, ...]]:
    return {f.groupoid.elements[i].m for i in f.coefficients}


class RegularRepresentation:
    """Per-unit matrix representation: convolution acting on each source fiber."""

    def __init__(self, G: FiniteGroupoid):
        self.groupoid = G
        self.bases: dict[int, tuple[int, ...]] = {}
        for u in G.units():
            fiber = tuple(i for i, g in enumerate(G.elements) if g.y == u)
            self.bases[u] = fiber
        # entry_table[u][(row, col)] = index of gamma . beta^{-1} when defined
        self.entry_table: dict[int, dict[tuple[int, int], int]] = {}
        for u, fiber in self.bases.items():
            table: dict[tuple[int, int], int] = {}
            for row, ig in enumerate(fiber):
                gamma = G.elements[ig]
                for col, ib in enumerate(fiber):
                    beta = G.elements[ib]
                    label = (
                        gamma.x,
                        tuple(a - b for a, b in zip(gamma.m, beta.m)),
                        beta.x,
                    )
                    if label in G:
                        table[(row, col)] = G.index_of(label)
            self.entry_table[u] = table

    def matrix(self, f: AlgebraElement, unit: int) -> np.ndarray:
        fiber = self.bases[unit]
        mat = np.zeros((len(fiber), len(fiber)), dtype=complex)
        for (row, col), idx in self.entry_table[unit].items():
            c = f.coefficients.get(idx)
            if c is not None:
                mat[row, col] = c
        return mat

    def represent(self, f: AlgebraElement) -> dict[int, np.ndarray]:
        return {u: self.matrix(f, u) for u in self.bases}


def algebra_dimension(generators) -> int:
    """Dimension of the smallest *-subalgebra containing the generators.

    Iterated span closure: orthonormalize the generators, then keep adjoining
    involutions and pairwise products until the span stops growing.
    """
    generators = list(generators)
    if not generators:
        return 0
    G = generators[0].groupoid
    for g in generators:
        _check_same_groupoid(generators[0], g)
    basis_vecs: list[np.ndarray] = []
    basis_elems: list[AlgebraElement] = []

    def try_add(el: AlgebraElement) -> bool:
        vec = el.to_vector()
        residual = vec.copy()
        for b in basis_vecs:
            residual -= np.vdot(b, residual) * b
        norm = float(np.linalg.norm(residual))
        if norm <= 1e-9 * max(1.0, float(np.linalg.norm(vec))):
            return False
        basis_vecs.append(residual / norm)
        basis_elems.append(el)
        return True

    fresh = [g for g in generators if try_add(g)]
    while fresh:
        batch, fresh = fresh, []
        for a in batch:
            if try_add(involution(a)):
                fresh.append(involution(a))
            for b in list(basis_elems):
                for prod in (convolve(a, b), convolve(b, a)):
                    if try_add(prod):
                        fresh.append(prod)
    return len(basis_vecs)


@dataclass(frozen=True)
class RelationReport:
    identity: str
    samples: int
    seed: int
    max_deviation: float
    tolerance: float
    passed: bool
    notes: str = ""

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "samples": self.samples,
            "seed": self.seed,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "verdict": "pass" if self.passed else "fail",
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def _report(identity, samples, seed, deviation, tol, notes="") -> RelationReport:
    return RelationReport(identity, samples, seed, deviation, tol, deviation <= tol, notes)


def random_vertex_function(rng: np.random.Generator, vertex_ids) -> VertexFunction:
    return VertexFunction(
        {v: complex(rng.standard_normal(), rng.standard_normal()) for v in vertex_ids}
    )


def random_edge_function(rng: np.random.Generator, edge_ids) -> EdgeFunction:
    return EdgeFunction(
        {e: complex(rng.standard_normal(), rng.standard_normal()) for e in edge_ids}
    )


def random_algebra_element(rng: np.random.Generator, G: FiniteGroupoid) -> AlgebraElement:
    return AlgebraElement(
        G,
        {
            i: complex(rng.standard_normal(), rng.standard_normal())
            for i in range(len(G.elements))
        },
    )


def verify_algebra_identities(
    G: FiniteGroupoid,
    samples: int = 100,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> list[RelationReport]:
    """Convolution associativity, involution, I-norm, regular representation."""
    rng = np.random.default_rng(seed)
    rep = RegularRepresentation(G)
    dev_assoc = dev_dist = dev_inv = dev_norm = dev_rep = dev_adj = 0.0
    if len(G.elements) <= 50:
        deltas = [AlgebraElement.delta(G, g.label()) for g in G.elements]
        for a in deltas:
            for b in deltas:
                for c in deltas:
                    lhs = convolve(convolve(a, b), c)
                    rhs = convolve(a, convolve(b, c))
                    dev_assoc = max(dev_assoc, (lhs - rhs).max_abs())
    for _ in range(samples):
        f = random_algebra_element(rng, G)
        g = random_algebra_element(rng, G)
        h = random_algebra_element(rng, G)
        dev_assoc = max(
            dev_assoc,
            (convolve(convolve(f, g), h) - convolve(f, convolve(g, h))).max_abs(),
        )
        dev_dist = max(
            dev_dist,
            (convolve(f, g + h) - (convolve(f, g) + convolve(f, h))).max_abs(),
            (convolve(f + g, h) - (convolve(f, h) + convolve(g, h))).max_abs(),
        )
        dev_inv = max(
            dev_inv,
            (involution(convolve(f, g)) - convolve(involution(g), involution(f))).max_abs(),
        )
        dev_norm = max(dev_norm, i_norm(convolve(f, g)) - i_norm(f) * i_norm(g))
        fg = convolve(f, g)
        for u in rep.bases:
            dev_rep = max(
                dev_rep,
                float(
                    np.max(
                        np.abs(rep.matrix(fg, u) - rep.matrix(f, u) @ rep.matrix(g, u))
                    )
                    if rep.bases[u]
                    else 0.0
                ),
            )
            dev_adj = max(
                dev_adj,
                float(
                    np.max(np.abs(rep.matrix(involution(f), u) - rep.matrix(f, u).conj().T))
                    if rep.bases[u]
                    else 0.0
                ),
            )
    return [
        _report("convolution_associativity", samples, seed, dev_assoc, tol),
        _report("convolution_distributive", samples, seed, dev_dist, tol),
        _report("involution_antimultiplicative", samples, seed, dev_inv, tol),
        _report("i_norm_submultiplicative", samples, seed, max(dev_norm, 0.0), tol),
        _report("regular_representation_multiplicative", samples, seed, dev_rep, tol),
        _report("regular_representation_adjoint", samples, seed, dev_adj, tol),
    ]


def verify_toeplitz_identities(
    G: FiniteGroupoid,
    samples: int = 100,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> list[RelationReport]:
    """S(xi)* S(eta) = P(<xi, eta>) and P(f) S(xi) = S(f . xi), sampled."""
    sk = _require_rank_one(G)
    rng = np.random.default_rng(seed)
    vertex_ids = [v.id for v in sk.vertices]
    edge_ids = [e.id for e in sk.edges]
    dev_i = dev_ii = 0.0
    for _ in range(samples):
        f = random_vertex_function(rng, vertex_ids)
        xi = random_edge_function(rng, edge_ids)
        eta = random_edge_function(rng, edge_ids)
        lhs_i = convolve(involution(edge_operator(G, xi)), edge_operator(G, eta))
        rhs_i = vertex_operator(G, inner_product(sk, xi, eta))
        dev_i = max(dev_i, (lhs_i - rhs_i).max_abs())
        lhs_ii = convolve(vertex_operator(G, f), edge_operator(G, xi))
        rhs_ii = edge_operator(G, left_action(sk, f, xi))
        dev_ii = max(dev_ii, (lhs_ii - rhs_ii).max_abs())
    return [
        _report("toeplitz_inner_product", samples, seed, dev_i, tol),
        _report("toeplitz_left_action", samples, seed, dev_ii, tol),
    ]


def cuntz_krieger_sides(
    G: FiniteGroupoid, f: VertexFunction
) -> tuple[AlgebraElement, AlgebraElement]:
    """Both sides of the Cuntz-Krieger identity for one vertex function.

    Rejects functions supported outside the regular vertices: the identity
    is only imposed there.
    """
    sk = _require_rank_one(G)
    regular = set(classify_vertices(sk).regular)
    if not f.support() <= regular:
        raise ValueError(
            f"vertex function supported off the regular vertices: "
            f"{sorted(f.support() - regular)}"
        )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = rank_one_decomposition(sk, f)
    return vertex_operator(G, f), rank_one_lift(G, pairs)


def verify_cuntz_krieger(
    boundary_G: FiniteGroupoid,
    samples: int = 100,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> RelationReport:
    """P(f) equals the lift of left multiplication by f on the boundary groupoid.

    Also checks the degree-zero edge case: every degree-0 boundary path is a
    source vertex, so both sides vanish on those units.
    """
    sk = _require_rank_one(boundary_G)
    classes = classify_vertices(sk)
    regular = list(classes.regular)
    rng = np.random.default_rng(seed)
    deviation = 0.0
    notes = ""
    for path_idx in boundary_G.unit_index:
        el = boundary_G.space.elements[path_idx]
        if el.path.degree.total == 0 and el.path.range not in classes.sources:
            notes = f"degree-0 boundary path at non-source vertex {el.path.range}"
    for _ in range(samples):
        f = random_vertex_function(rng, regular) if regular else VertexFunction({})
        lhs, rhs = cuntz_krieger_sides(boundary_G, f)
        deviation = max(deviation, (lhs - rhs).max_abs())
        for path_idx, elem_idx in boundary_G.unit_index.items():
            if boundary_G.space.elements[path_idx].path.degree.total == 0:
                deviation = max(
                    deviation,
                    abs(lhs.coefficients.get(elem_idx, 0j)),
                    abs(rhs.coefficients.get(elem_idx, 0j)),
                )
    passed = deviation <= tol and not notes
    return RelationReport("cuntz_krieger", samples, seed, deviation, tol, passed, notes)


def verify_gauge_action(
    G: FiniteGroupoid,
    samples: int = 100,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> list[RelationReport]:
    """Gauge scaling is an automorphism, respects the grading, and fixes units."""
    sk = G.space.skeleton
    rng = np.random.default_rng(seed)
    dev_auto = dev_grade = dev_gen = 0.0
    for _ in range(samples):
        f = random_algebra_element(rng, G)
        g = random_algebra_element(rng, G)
        ts = tuple(
            complex(np.exp(2j * np.pi * rng.random())) for _ in range(sk.rank)
        )
        lhs = gauge_automorphism(convolve(f, g), ts)
        rhs = convolve(gauge_automorphism(f, ts), gauge_automorphism(g, ts))
        dev_auto = max(dev_auto, (lhs - rhs).max_abs())
        levels_f = support_levels(f)
        levels_g = support_levels(g)
        if levels_f and levels_g:
            mf = sorted(levels_f)[rng.integers(len(levels_f))]
            mg = sorted(levels_g)[rng.integers(len(levels_g))]
            prod = convolve(homogeneous_component(f, mf), homogeneous_component(g, mg))
            expected = tuple(a + b for a, b in zip(mf, mg))
            bad = {lvl for lvl in support_levels(prod) if lvl != expected}
            if bad:
                dev_grade = max(
                    dev_grade,
                    max(
                        abs(c)
                        for i, c in prod.coefficients.items()
                        if G.elements[i].m in bad
                    ),
                )
    reports = [
        _report("gauge_automorphism", samples, seed, dev_auto, tol),
        _report("gauge_grading", samples, seed, dev_grade, tol),
    ]
    if sk.rank == 1:
        for _ in range(samples):
            t = complex(np.exp(2j * np.pi * rng.random()))
            f = random_vertex_function(rng, [v.id for v in sk.vertices])
            xi = random_edge_function(rng, [e.id for e in sk.edges])
            pf = vertex_operator(G, f)
            sxi = edge_operator(G, xi)
            if gauge_automorphism(pf, t) != pf:
                dev_gen = max(dev_gen, (gauge_automorphism(pf, t) - pf).max_abs())
            if gauge_automorphism(sxi, t) != sxi.scale(t):
                dev_gen = max(dev_gen, (gauge_automorphism(sxi, t) - sxi.scale(t)).max_abs())
        reports.append(
            _report("gauge_scales_generators", samples, seed, dev_gen, 0.0)
        )
    return reports


def verify_quotient(
    G: FiniteGroupoid,
    boundary_G: FiniteGroupoid,
    samples: int = 100,
    seed: int = DEFAULT_SEED,
) -> RelationReport:
    """Restriction to the boundary groupoid is multiplicative, exactly.

    Boundary invariance makes the surviving convolution terms identical on
    both sides, and canonical iteration order makes the float sums identical
    too, so the tolerance here is zero.
    """
    rng = np.random.default_rng(seed)
    deviation = 0.0
    for _ in range(samples):
        f = random_algebra_element(rng, G)
        g = random_algebra_element(rng, G)
        lhs = quotient_restrict(convolve(f, g), boundary_G)
        rhs = convolve(quotient_restrict(f, boundary_G), quotient_restrict(g, boundary_G))
        deviation = max(deviation, (lhs - rhs).max_abs())
    return _report("quotient_multiplicative", samples, seed, deviation, 0.0)


@dataclass(frozen=True)
class GenerationReport:
    generated_dimension: int
    total_dimension: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "generated_dimension": self.generated_dimension,
            "total_dimension": self.total_dimension,
            "verdict": "pass" if self.passed else "fail",
        }


def generation_check(G: FiniteGroupoid) -> GenerationReport:
    """Do the vertex and edge generators span the whole convolution algebra?"""
    sk = _require_rank_one(G)
    generators = [
        vertex_operator(G, VertexFunction.delta(v.id)) for v in sk.vertices
    ] + [edge_operator(G, EdgeFunction.delta(e.id)) for e in sk.edges]
    generators = [g for g in generators if g.coefficients]
    generated = algebra_dimension(generators)
    total = algebra_dimension([AlgebraElement.delta(G, g.label()) for g in G.elements])
    return GenerationReport(generated, total, generated == total)
