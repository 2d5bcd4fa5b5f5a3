"""The path groupoid of an enumerated path space, and its boundary reduction.

Elements are triples (x, m, y): two space elements whose tails agree after
shifts differing by m in Z^k.  Each element stores one witnessing shift pair;
equality ignores witnesses.  The module also verifies, at finite scale, the
structure that makes the groupoid etale: cylinder sets cover it and the
range and source maps are injective on each cylinder.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .skeleton import Degree, ExactModeError, degree_box
from . import paths as pth
from .paths import Path
from .boundary import FinitePathSpace, boundary_paths, prepend


@dataclass(frozen=True)
class GroupoidElement:
    """(x, m, y): x and y are space indices, m in Z^k; witness = (p, q)."""

    x: int
    m: tuple[int, ...]
    y: int
    witness: tuple[Degree, Degree] = field(compare=False)

    def label(self) -> tuple[int, tuple[int, ...], int]:
        return (self.x, self.m, self.y)


class FiniteGroupoid:
    """An enumerated groupoid over a finite path space."""

    def __init__(self, space: FinitePathSpace, elements, complete: bool = True):
        self.space = space
        self.elements: tuple[GroupoidElement, ...] = tuple(
            sorted(elements, key=lambda g: g.label())
        )
        self.complete = complete
        self._index: dict[tuple[int, tuple[int, ...], int], int] = {
            g.label(): i for i, g in enumerate(self.elements)
        }
        self.unit_index: dict[int, int] = {
            g.x: i for i, g in enumerate(self.elements) if g.x == g.y and not any(g.m)
        }

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def rank(self) -> int:
        return self.space.skeleton.rank

    def index_of(self, label: tuple[int, tuple[int, ...], int]) -> int:
        return self._index[label]

    def __contains__(self, label: tuple[int, tuple[int, ...], int]) -> bool:
        return label in self._index

    def units(self) -> tuple[int, ...]:
        return tuple(sorted(self.unit_index))

    def to_json(self) -> dict:
        orbit_of: dict[int, int] = {}
        for label, members in enumerate(orbits(self)):
            for u in members:
                orbit_of[u] = label
        return {
            "complete": self.complete,
            "elements": [
                {
                    "x": g.x,
                    "m": list(g.m),
                    "y": g.y,
                    "unit": g.x == g.y and not any(g.m),
                    "orbit": orbit_of[g.x],
                }
                for g in self.elements
            ],
            "units": [self.unit_index[u] for u in self.units()],
        }


def _tails(space: FinitePathSpace) -> list[dict[tuple[int, ...], Path]]:
    sk = space.skeleton
    out = []
    for el in space.elements:
        table = {
            m.coords: pth.factorize(sk, el.path, m)[1] for m in degree_box(el.path.degree)
        }
        out.append(table)
    return out


def build_path_groupoid(space: FinitePathSpace) -> FiniteGroupoid:
    """Enumerate all (x, p - q, y) with matching tails at shifts p, q.

    On an exact space this is the whole path groupoid.  On a truncated space
    only witnesses within the recorded prefixes are visible, so the result
    carries complete=False.
    """
    tails = _tails(space)
    found: dict[tuple[int, tuple[int, ...], int], tuple[Degree, Degree]] = {}
    for ix in range(len(space.elements)):
        for iy in range(len(space.elements)):
            for p_coords, ptail in tails[ix].items():
                for q_coords, qtail in tails[iy].items():
                    if ptail != qtail:
                        continue
                    m = tuple(a - b for a, b in zip(p_coords, q_coords))
                    label = (ix, m, iy)
                    wit = (Degree(p_coords), Degree(q_coords))
                    if label not in found or wit[0].coords < found[label][0].coords:
                        found[label] = wit
    elements = [
        GroupoidElement(x, m, y, witness=found[(x, m, y)]) for (x, m, y) in found
    ]
    return FiniteGroupoid(space, elements, complete=space.is_exact)


def build_boundary_groupoid(space: FinitePathSpace) -> FiniteGroupoid:
    """The path groupoid restricted to boundary elements."""
    restricted = space if space.boundary_only else boundary_paths(space)
    return build_path_groupoid(restricted)


def invert_element(G: FiniteGroupoid, g: GroupoidElement) -> GroupoidElement:
    label = (g.y, tuple(-c for c in g.m), g.x)
    return G.elements[G.index_of(label)]


def compose_elements(
    G: FiniteGroupoid, g1: GroupoidElement, g2: GroupoidElement
) -> GroupoidElement:
    """The composite (x, m+n, z) of (x, m, y) and (y, n, z)."""
    if g1.y != g2.x:
        raise ValueError(f"not composable: {g1.label()} then {g2.label()}")
    label = (g1.x, tuple(a + b for a, b in zip(g1.m, g2.m)), g2.y)
    return G.elements[G.index_of(label)]


def cocycle(g: GroupoidElement) -> tuple[int, ...]:
    return g.m


def orbits(G: FiniteGroupoid) -> tuple[tuple[int, ...], ...]:
    """Partition of the unit space under the range/source relation."""
    parent = {u: u for u in range(len(G.space.elements))}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in G.elements:
        ra, rb = find(g.x), find(g.y)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for u in parent:
        groups.setdefault(find(u), []).append(u)
    return tuple(tuple(sorted(g)) for _, g in sorted(groups.items()))


def isotropy(G: FiniteGroupoid, unit: int) -> tuple[GroupoidElement, ...]:
    """All elements looping at the given unit (space index)."""
    return tuple(g for g in G.elements if g.x == unit and g.y == unit)


@dataclass(frozen=True)
class GroupoidAxiomReport:
    passed: bool
    failures: tuple[str, ...]

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": list(self.failures)}


def verify_groupoid_axioms(G: FiniteGroupoid) -> GroupoidAxiomReport:
    """Closure, units, inverses, witness validity, and associativity."""
    failures: list[str] = []
    sk = G.space.skeleton
    zero = (0,) * G.rank

    for u in range(len(G.space.elements)):
        if (u, zero, u) not in G:
            failures.append(f"missing unit at space index {u}")
    for g in G.elements:
        p, q = g.witness
        xpath, ypath = G.space.elements[g.x].path, G.space.elements[g.y].path
        if (
            not p <= xpath.degree
            or not q <= ypath.degree
            or tuple(a - b for a, b in zip(p.coords, q.coords)) != g.m
            or pth.factorize(sk, xpath, p)[1] != pth.factorize(sk, ypath, q)[1]
        ):
            failures.append(f"invalid witness on {g.label()}")
        inv = (g.y, tuple(-c for c in g.m), g.x)
        if inv not in G:
            failures.append(f"inverse of {g.label()} missing")
        else:
            if (g.x, zero, g.x) not in G or (g.y, zero, g.y) not in G:
                failures.append(f"unit for {g.label()} missing")

    for g1 in G.elements:
        for g2 in G.elements:
            if g1.y != g2.x:
                continue
            label = (g1.x, tuple(a + b for a, b in zip(g1.m, g2.m)), g2.y)
            if label not in G:
                failures.append(f"composite of {g1.label()} and {g2.label()} missing")

    if not failures:
        # With closure established, unit/inverse/associativity laws reduce to
        # label arithmetic; spot-check them exhaustively all the same.
        for g in G.elements:
            gu = compose_elements(G, g, G.elements[G.unit_index[g.y]])
            ug = compose_elements(G, G.elements[G.unit_index[g.x]], g)
            if gu != g or ug != g:
                failures.append(f"unit law fails at {g.label()}")
            gi = invert_element(G, g)
            if compose_elements(G, g, gi) != G.elements[G.unit_index[g.x]]:
                failures.append(f"inverse law fails at {g.label()}")
        for g1 in G.elements:
            for g2 in G.elements:
                if g1.y != g2.x:
                    continue
                g12 = compose_elements(G, g1, g2)
                for g3 in G.elements:
                    if g2.y != g3.x:
                        continue
                    if compose_elements(G, g12, g3) != compose_elements(
                        G, g1, compose_elements(G, g2, g3)
                    ):
                        failures.append(
                            f"associativity fails at {g1.label()},{g2.label()},{g3.label()}"
                        )
    return GroupoidAxiomReport(not failures, tuple(failures))


@dataclass(frozen=True)
class CylinderSet:
    """Z(lam, mu): elements (lam.x, d(lam)-d(mu), mu.x) over common tails x."""

    lam: Path
    mu: Path
    members: tuple[int, ...]


def cylinder(G: FiniteGroupoid, lam: Path, mu: Path) -> CylinderSet:
    sk = G.space.skeleton
    if pth.source(sk, lam) != pth.source(sk, mu):
        raise ValueError("cylinder needs paths with a common source")
    if not G.space.is_exact:
        raise ExactModeError("cylinders are only enumerable in exact mode")
    m = tuple(
        a - b for a, b in zip(lam.degree.coords, mu.degree.coords)
    )
    members = []
    tail_vertex = pth.source(sk, lam)
    for el in G.space.elements:
        if el.path.range != tail_vertex:
            continue
        xl = prepend(sk, lam, el)
        xm = prepend(sk, mu, el)
        label = (G.space.index_of(xl.path), m, G.space.index_of(xm.path))
        members.append(G.index_of(label))
    return CylinderSet(lam, mu, tuple(sorted(members)))


@dataclass(frozen=True)
class EtaleReport:
    passed: bool
    failures: tuple[str, ...]

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": list(self.failures)}


def verify_etale(G: FiniteGroupoid) -> EtaleReport:
    """Cylinders cover G, are bisections, and unit cylinders give the units.

    These are the finite shadows of the groupoid being etale: every element
    sits in a basic cylinder on which range and source are injective, and
    the unit space is the union of the vertex cylinders.
    """
    if not G.space.is_exact:
        raise ExactModeError("etale verification requires an exact space")
    sk = G.space.skeleton
    failures: list[str] = []
    seen_cylinders: set[tuple[Path, Path]] = set()
    for i, g in enumerate(G.elements):
        p, q = g.witness
        lam = pth.factorize(sk, G.space.elements[g.x].path, p)[0]
        mu = pth.factorize(sk, G.space.elements[g.y].path, q)[0]
        cyl = cylinder(G, lam, mu)
        if i not in cyl.members:
            failures.append(f"element {g.label()} not covered by its witness cylinder")
        seen_cylinders.add((lam, mu))
    for lam, mu in sorted(seen_cylinders, key=lambda t: (pth.path_sort_key(t[0]), pth.path_sort_key(t[1]))):
        cyl = cylinder(G, lam, mu)
        ranges = [G.elements[i].x for i in cyl.members]
        sources = [G.elements[i].y for i in cyl.members]
        if len(set(ranges)) != len(ranges):
            failures.append(f"range map not injective on cylinder ({lam.to_json()}, {mu.to_json()})")
        if len(set(sources)) != len(sources):
            failures.append(f"source map not injective on cylinder ({lam.to_json()}, {mu.to_json()})")
    unit_union: set[int] = set()
    for v in sk.vertices:
        vp = pth.vertex_path(sk, v.id)
        if any(el.path.range == v.id for el in G.space.elements):
            unit_union.update(cylinder(G, vp, vp).members)
    if unit_union != set(G.unit_index.values()):
        failures.append("unit space differs from the union of vertex cylinders")
    return EtaleReport(not failures, tuple(failures))
