"""Deterministic polytope generators and the built-in test corpus."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable

from .cayley import construct_cayley, min_edge_length
from .errors import EmptyChop, InvalidParams, NonLatticeChop, ToricJetsError
from .lattice import mat_mul
from .polytope import LatticePolytope, box, chop, hexagon, is_smooth, standard_simplex, vertex_chart


@dataclass(frozen=True)
class CorpusSpec:
    name: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def label(self) -> str:
        args = ",".join(f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})" + (f"#{self.seed}" if self.seed else "")

    def __hash__(self):
        return hash(self.label())


def random_unimodular(n: int, rng: random.Random, steps: int = 6, spread: int = 2) -> tuple[tuple[int, ...], ...]:
    """Product of random elementary matrices and a signed permutation."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        return ((rng.choice((1, -1)),),)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([x for x in range(-spread, spread + 1) if x])
        e = [[int(a == b) for b in range(n)] for a in range(n)]
        e[i][j] = c
        m = [list(r) for r in mat_mul(e, m)]
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    return tuple(tuple(signs[i] * m[perm[i]][j] for j in range(n)) for i in range(n))


def _spec(value) -> LatticePolytope:
    """Accept a nested spec (dict with 'name'), a vertex list, or a polytope."""
    if isinstance(value, LatticePolytope):
        return value
    if isinstance(value, dict):
        params = {k: v for k, v in value.items() if k not in ("name", "seed")}
        return generate(CorpusSpec(value["name"], params, value.get("seed", 0)))
    raise InvalidParams(f"cannot interpret {value!r} as a polytope")


def _slice_points(value) -> list[tuple[int, ...]]:
    if isinstance(value, (dict, LatticePolytope)):
        return list(_spec(value).vertices)
    return [tuple(int(c) for c in pt) for pt in value]


def _gen_simplex(n: int, k: int = 1) -> LatticePolytope:
    if n < 1 or k < 1:
        raise InvalidParams("simplex needs n >= 1 and k >= 1")
    return standard_simplex(n, k)


def _gen_box(sides) -> LatticePolytope:
    if not sides or any(s < 1 for s in sides):
        raise InvalidParams("box sides must be positive")
    return box(sides)


def _gen_cube(n: int, k: int = 1) -> LatticePolytope:
    return _gen_box([k] * n)


def _gen_cross(n: int, plus=None, minus=None, center=None) -> LatticePolytope:
    """``conv{center + plus_i e_i, center - minus_i e_i}``."""
    plus = plus or [1] * n
    minus = minus or [1] * n
    center = center or [0] * n
    if len(plus) != n or len(minus) != n or len(center) != n or min(plus + minus) < 1:
        raise InvalidParams("cross-polytope needs n positive plus/minus extents")
    verts = []
    for i in range(n):
        for c in (plus[i], -minus[i]):
            v = list(center)
            v[i] += c
            verts.append(tuple(v))
    return LatticePolytope.from_vertices(verts, n)


def _gen_delpezzo6(scale: int = 1) -> LatticePolytope:
    return hexagon().dilate(scale)


def _gen_hirzebruch(a: int, b: int, c: int = 0) -> LatticePolytope:
    if a < 1 or b < 1 or c < 0:
        raise InvalidParams("hirzebruch polygon needs a, b >= 1 and c >= 0")
    return LatticePolytope.from_vertices([(0, 0), (a + c * b, 0), (a, b), (0, b)])


def _gen_cayley(slices, s: int) -> LatticePolytope:
    if s < 1 or len(slices) < 2:
        raise InvalidParams("cayley needs s >= 1 and at least two slices")
    try:
        return construct_cayley([_slice_points(sl) for sl in slices], s)
    except ToricJetsError as exc:
        raise InvalidParams(str(exc)) from exc


def _gen_chop(base, normal, level: int) -> LatticePolytope:
    try:
        return chop(_spec(base), normal, level)
    except (EmptyChop, NonLatticeChop) as exc:
        raise InvalidParams(str(exc)) from exc


def blowup(p: LatticePolytope, vertex: int, depth: int = 1) -> LatticePolytope:
    """Cut off vertex ``vertex`` at chart height ``depth`` (toric blow-up of a fixpoint)."""
    chart = vertex_chart(p, vertex)
    normal = tuple(sum(chart.map[i][j] for i in range(p.dim)) for j in range(p.dim))
    level = depth + sum(a * b for a, b in zip(normal, p.vertices[vertex]))
    return chop(p, normal, level)


def _gen_blowup(base, vertices, depth: int = 1) -> LatticePolytope:
    p = _spec(base)
    targets = [p.vertices[i] for i in vertices]
    try:
        for v in targets:
            p = blowup(p, p.vertices.index(v), depth)
    except (ToricJetsError, ValueError) as exc:
        raise InvalidParams(f"blow-up failed: {exc}") from exc
    return p


def _gen_unimodular(base, seed: int = 0) -> LatticePolytope:
    p = _spec(base)
    rng = random.Random(seed)
    m = random_unimodular(p.dim, rng)
    t = [rng.randint(-3, 3) for _ in range(p.dim)]
    return p.transform(m, t)


def _random_slice_pair(m: int, k: int, rng: random.Random):
    """Two slices in Z^m whose Cayley sum of order k is likely smooth."""
    family = rng.choice(["box", "box", "simplex", "point", "face"] + (["hirzebruch"] if m == 2 else []))

    def partner(a: int) -> int:
        options = [b for b in range(k, 7) if (b - a) % k == 0]
        return rng.choice(options)

    def shift(extent: list[int]) -> list[int]:
        return [k * rng.randint(0, max(0, (6 - e) // k)) for e in extent]

    if family == "box":
        a = [rng.randint(k, 6) for _ in range(m)]
        b = [partner(x) for x in a]
        t0, t1 = shift(a), shift(b)
        p0 = [tuple(c + o for c, o in zip(v, t0)) for v in product(*((0, x) for x in a))]
        p1 = [tuple(c + o for c, o in zip(v, t1)) for v in product(*((0, x) for x in b))]
    elif family == "simplex":
        j = rng.randint(k, 6)
        j1 = partner(j)
        p0 = list(standard_simplex(m, j).vertices)
        p1 = list(standard_simplex(m, j1).vertices)
    elif family == "hirzebruch":
        c = rng.randint(0, 1)
        a, b = rng.randint(k, 4), rng.randint(k, 3)
        a1, b1 = partner(a), partner(b)
        if max(a + c * b, a1 + c * b1) > 6:
            c = 0
        p0 = list(_gen_hirzebruch(a, b, c).vertices)
        p1 = list(_gen_hirzebruch(a1, b1, c).vertices)
    elif family == "point":
        p0 = list(standard_simplex(m, k).vertices)
        p1 = [tuple([0] * m)]
    else:
        # box against one of its faces, lower dimensional
        a = [rng.randint(k, 6) for _ in range(m)]
        p0 = list(product(*((0, x) for x in a)))
        keep = rng.randint(0, m - 1)
        p1 = sorted({tuple(v[i] if i < keep else 0 for i in range(m)) for v in p0})
    return family, p0, p1


def _gen_random_cayley(dim: int, k: int, seed: int = 0, attempts: int = 400) -> LatticePolytope:
    """A smooth ``[P_0 * P_1]^k`` of dimension ``dim`` with all edges >= k."""
    if dim < 2 or k < 1:
        raise InvalidParams("random_cayley needs dim >= 2 and k >= 1")
    rng = random.Random(f"random_cayley:{dim}:{k}:{seed}")
    for _ in range(attempts):
        _, p0, p1 = _random_slice_pair(dim - 1, k, rng)
        try:
            p = construct_cayley([p0, p1], k)
        except ToricJetsError:
            continue
        if is_smooth(p) and min_edge_length(p) >= k:
            return p
    raise InvalidParams(f"no smooth Cayley polytope found for dim={dim}, k={k}, seed={seed}")


GENERATORS: dict[str, Callable[..., LatticePolytope]] = {
    "simplex": _gen_simplex,
    "box": _gen_box,
    "cube": _gen_cube,
    "cross": _gen_cross,
    "delpezzo6": _gen_delpezzo6,
    "hirzebruch": _gen_hirzebruch,
    "cayley": _gen_cayley,
    "chop": _gen_chop,
    "blowup": _gen_blowup,
    "unimodular": _gen_unimodular,
    "random_cayley": _gen_random_cayley,
}

_SEEDED = {"unimodular", "random_cayley"}


def generate(spec: CorpusSpec) -> LatticePolytope:
    try:
        fn = GENERATORS[spec.name]
    except KeyError:
        raise InvalidParams(f"unknown generator {spec.name!r}; choose from {sorted(GENERATORS)}") from None
    params = dict(spec.params)
    if spec.name in _SEEDED:
        params.setdefault("seed", spec.seed)
    try:
        return fn(**params)
    except TypeError as exc:
        raise InvalidParams(f"{spec.name}: {exc}") from exc


# -- the built-in corpus ----------------------------------------------------


def cayley_family(count: int = 54, seed: int = 0, exclude=()) -> list[CorpusSpec]:
    """Distinct smooth Cayley polytopes of order k <= 3 in dimensions 2-4, all edges >= k.

    Dimensions and orders cycle through all nine combinations; seeds that
    reproduce an earlier polytope, or one listed in ``exclude``, are skipped.
    """
    combos = [(d, k) for d in (2, 3, 4) for k in (1, 2, 3)]
    specs, seen = [], {p.vertices for p in exclude}
    i = 0
    while len(specs) < count:
        d, k = combos[i % len(combos)]
        spec = CorpusSpec("random_cayley", {"dim": d, "k": k}, seed + i // len(combos))
        i += 1
        p = generate(spec)
        if p.vertices in seen:
            continue
        seen.add(p.vertices)
        specs.append(spec)
    return specs


def other_family() -> list[CorpusSpec]:
    """Smooth polytopes outside the Cayley family: hexagons, blow-ups, mixed boxes."""
    specs = [
        CorpusSpec("delpezzo6"),
        CorpusSpec("delpezzo6", {"scale": 2}),
        CorpusSpec("delpezzo6", {"scale": 3}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 2, "k": 4}, "vertices": [0, 1, 2], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 2, "k": 5}, "vertices": [0, 1, 2], "depth": 2}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 2, "k": 5}, "vertices": [0, 1], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 2, "k": 3}, "vertices": [0], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 2, "k": 4}, "vertices": [0], "depth": 2}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 3, "k": 3}, "vertices": [0], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 3, "k": 3}, "vertices": [0, 1], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 3, "k": 4}, "vertices": [0, 1, 2, 3], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 4, "k": 2}, "vertices": [0], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "box", "sides": [2, 2]}, "vertices": [0], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "box", "sides": [3, 2]}, "vertices": [0, 3], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "box", "sides": [3, 3]}, "vertices": [0, 1, 2, 3], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "box", "sides": [2, 2, 2]}, "vertices": [0], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "box", "sides": [2, 3, 2]}, "vertices": [0, 7], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "cube", "n": 3, "k": 3}, "vertices": [0, 7], "depth": 2}),
        CorpusSpec("blowup", {"base": {"name": "delpezzo6", "scale": 2}, "vertices": [0], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "delpezzo6", "scale": 2}, "vertices": [0, 3], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "hirzebruch", "a": 2, "b": 2, "c": 1}, "vertices": [0], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "hirzebruch", "a": 3, "b": 3, "c": 1}, "vertices": [1, 2], "depth": 1}),
        CorpusSpec("blowup", {"base": {"name": "simplex", "n": 2, "k": 6}, "vertices": [0, 1, 2], "depth": 2}),
        CorpusSpec("unimodular", {"base": {"name": "blowup", "base": {"name": "simplex", "n": 2, "k": 5}, "vertices": [0, 1, 2], "depth": 2}}, 4),
        CorpusSpec("unimodular", {"base": {"name": "delpezzo6"}}, 1),
        CorpusSpec("unimodular", {"base": {"name": "delpezzo6", "scale": 2}}, 2),
        CorpusSpec("unimodular", {"base": {"name": "blowup", "base": {"name": "box", "sides": [2, 2, 2]}, "vertices": [0], "depth": 1}}, 3),
        CorpusSpec("box", {"sides": [2, 3]}),
        CorpusSpec("box", {"sides": [1, 2, 3]}),
        CorpusSpec("box", {"sides": [3, 2, 2, 4]}),
        CorpusSpec("hirzebruch", {"a": 1, "b": 2, "c": 1}),
        CorpusSpec("hirzebruch", {"a": 2, "b": 1, "c": 2}),
    ]
    return specs


def reference_family() -> list[CorpusSpec]:
    """Simplices, cubes, cross-polytopes and the del Pezzo hexagon."""
    specs = [CorpusSpec("simplex", {"n": n, "k": k}) for n in (1, 2, 3, 4) for k in (1, 2, 3)]
    specs += [CorpusSpec("cube", {"n": n, "k": k}) for n in (2, 3) for k in (1, 2)]
    specs += [
        CorpusSpec("cross", {"n": 2}),
        CorpusSpec("cross", {"n": 3}),
        CorpusSpec("cross", {"n": 2, "plus": [2, 1], "minus": [1, 3]}),
        CorpusSpec("delpezzo6"),
        CorpusSpec("cayley", {"slices": [[[0], [1]], [[0], [1]], [[0], [1]]], "s": 1}),
        CorpusSpec("cayley", {"slices": [{"name": "box", "sides": [2, 2]}, [[0, 0], [2, 0]]], "s": 2}),
        CorpusSpec("cayley", {"slices": [{"name": "simplex", "n": 2, "k": 2}, {"name": "simplex", "n": 2, "k": 2}], "s": 2}),
    ]
    return specs


def builtin_corpus() -> list[tuple[CorpusSpec, LatticePolytope]]:
    """Every corpus member, deduplicated by vertex set, in a fixed order."""
    seen = set()
    out = []
    reference = [(spec, generate(spec)) for spec in reference_family()]
    others = [(spec, generate(spec)) for spec in other_family()]
    taken = [p for _, p in reference + others]
    cayley = [(spec, generate(spec)) for spec in cayley_family(exclude=taken)]
    for spec, p in reference + cayley + others:
        key = (p.dim, p.vertices)
        if key in seen:
            continue
        seen.add(key)
        out.append((spec, p))
    return out
