"""Catalog of the graded rings and modules the verifiers operate on.

Each entry builds an explicit object: a ring with basis and structure
constants, usually together with its split form (`bar`), the restriction map
between them, and where relevant a presentation over k_m* or the ambient
image model.  Constructions here follow the stated presentations directly;
independent construction paths (ambient collapse, v -> 0 of the k_m*
presentation) live in other modules and are compared against these in the
verifier suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import is_prime
from .graded import GradedFPModule, GradedMap
from .km import KmPresentation
from .omega import (
    BasisClass,
    DegreeRule,
    OmegaImageModel,
    PresentedRing,
    ring_tensor,
)

CATALOG_IDS = (
    "chow_rost",
    "bar_rost",
    "omega_image_rost",
    "km_rost",
    "gr_m_rost",
    "product_rost",
    "pfister_neighbor_chow",
    "gr_m_pfister",
    "excellent_quadric_chow",
)


class CatalogError(ValueError):
    pass


@dataclass
class CatalogObject:
    id: str
    params: dict
    ring: PresentedRing | None = None
    bar: PresentedRing | None = None
    res: GradedMap | None = None
    km: KmPresentation | None = None
    omega: OmegaImageModel | None = None
    notes: tuple[str, ...] = ()

    def module(self) -> GradedFPModule:
        if self.ring is None:
            raise CatalogError(f"{self.id} has no ring presentation")
        return self.ring.module()


def map_from_rules(
    source: GradedFPModule, target: GradedFPModule, rules: dict
) -> GradedMap:
    """GradedMap from name-level rules {src_name: ((tgt_name, coeff), ...)}."""
    matrices: dict[int, list[list[int]]] = {}
    for d in source.degrees():
        sg = source.gens_at(d)
        tg = target.gens_at(d)
        matrices[d] = [[0] * sg for _ in range(tg)]
    for src_name, images in rules.items():
        d, j = source.generator_index(src_name)
        for tgt_name, coeff in images:
            td, i = target.generator_index(tgt_name)
            if td != d:
                raise CatalogError(
                    f"rule {src_name} -> {tgt_name} does not preserve degree"
                )
            matrices[d][i][j] += coeff
    gm = GradedMap(
        source=source,
        target=target,
        matrices={d: tuple(tuple(r) for r in m) for d, m in matrices.items()},
    )
    check = gm.well_defined()
    if not check:
        raise CatalogError("map not well defined: " + "; ".join(check.diffs))
    return gm


def _sorted_ring(p: int, classes, products, generators=()) -> PresentedRing:
    """Assemble a PresentedRing from (class list, name-level product rules).

    `products` maps unordered name pairs to ((name, coeff), ...); missing
    pairs multiply to zero; the unit acts as identity automatically.
    """
    classes = sorted(classes, key=lambda b: (b.degree, b.name))
    index = {b.name: k for k, b in enumerate(classes)}
    unit = index["1"]
    mult: dict[tuple[int, int], dict[int, int]] = {}
    for a, ba in enumerate(classes):
        for b, bb in enumerate(classes):
            if a == unit:
                mult[(a, b)] = {b: 1}
                continue
            if b == unit:
                mult[(a, b)] = {a: 1}
                continue
            key = tuple(sorted((ba.name, bb.name)))
            out: dict[int, int] = {}
            for name, coeff in products.get(key, ()):
                out[index[name]] = out.get(index[name], 0) + coeff
            if out:
                mult[(a, b)] = out
    ring = PresentedRing(
        p=p,
        basis=tuple(classes),
        unit=unit,
        mult=mult,
        generators=tuple(index[g] for g in generators),
    )
    ring.audit()
    return ring


# ---------------------------------------------------------------------------
# Rost-type entries
# ---------------------------------------------------------------------------


def _require_prime(p: int):
    if not is_prime(p):
        raise CatalogError(f"p={p} must be prime")


def _require_n(n: int):
    if n < 2:
        raise CatalogError(f"n={n} must be >= 2")


def _yname(var: str, j: int) -> str:
    return var if j == 1 else f"{var}^{j}"


def chow_rost_ring(p: int, n: int, var: str = "y") -> PresentedRing:
    """Chow ring of a Rost-type motive: free classes 1, c_0(y^j); p-torsion
    classes c_i(y^j) for 1 <= i <= n-1; the only nonzero products are
    c_0(Y) c_0(Y') = p c_0(YY')."""
    _require_prime(p)
    _require_n(n)
    rule = DegreeRule(p, n)
    classes = [BasisClass("1", 0, 0)]
    for j in range(1, p):
        classes.append(BasisClass(_c(0, j, var), rule.c_degree(0, j), 0))
        for i in range(1, n):
            classes.append(BasisClass(_c(i, j, var), rule.c_degree(i, j), 1))
    products = {}
    for ji in range(1, p):
        for jj in range(ji, p):
            if ji + jj <= p - 1:
                key = tuple(sorted((_c(0, ji, var), _c(0, jj, var))))
                products[key] = ((_c(0, ji + jj, var), p),)
    gens = [_c(i, j, var) for j in range(1, p) for i in range(0, n)]
    return _sorted_ring(p, classes, products, generators=gens)


def _c(i: int, j: int, var: str) -> str:
    return f"c_{i}({_yname(var, j)})"


def bar_rost_ring(p: int, n: int, var: str = "y") -> PresentedRing:
    """Split form: the truncated polynomial ring on one class of degree
    (p^n - 1)/(p - 1)."""
    _require_prime(p)
    _require_n(n)
    rule = DegreeRule(p, n)
    classes = [BasisClass("1", 0, 0)]
    for j in range(1, p):
        classes.append(BasisClass(_yname(var, j), j * rule.y_degree, 0))
    products = {}
    for ji in range(1, p):
        for jj in range(ji, p):
            if ji + jj <= p - 1:
                key = tuple(sorted((_yname(var, ji), _yname(var, jj))))
                products[key] = ((_yname(var, ji + jj), 1),)
    return _sorted_ring(p, classes, products, generators=[_yname(var, 1)])


def rost_res_rules(p: int, n: int, var: str = "y") -> dict:
    rules = {"1": (("1", 1),)}
    for j in range(1, p):
        rules[_c(0, j, var)] = ((_yname(var, j), p),)
        for i in range(1, n):
            rules[_c(i, j, var)] = ()
    return rules


def build_chow_rost(p: int, n: int) -> CatalogObject:
    ring = chow_rost_ring(p, n)
    bar = bar_rost_ring(p, n)
    res = map_from_rules(ring.module(), bar.module(), rost_res_rules(p, n))
    return CatalogObject(
        id="chow_rost",
        params={"p": p, "n": n},
        ring=ring,
        bar=bar,
        res=res,
        omega=OmegaImageModel(p, (n,)),
    )


def build_bar_rost(p: int, n: int) -> CatalogObject:
    return CatalogObject(
        id="bar_rost", params={"p": p, "n": n}, ring=bar_rost_ring(p, n)
    )


def build_omega_image_rost(p: int, n: int) -> CatalogObject:
    _require_prime(p)
    _require_n(n)
    return CatalogObject(
        id="omega_image_rost", params={"p": p, "n": n}, omega=OmegaImageModel(p, (n,))
    )


def km_rost(p: int, n: int, m: int) -> KmPresentation:
    """Presentation of the connective theory of a Rost-type motive.

    For m >= n everything is scalar-extended from the Chow ring.  For
    m <= n-1 the classes c_i (i != 0, m) are (p, v)-torsion and c_m, c_0 are
    amalgamated along p*c_m = v*c_0.
    """
    _require_prime(p)
    _require_n(n)
    if m < 1:
        raise CatalogError("m must be >= 1")
    rule = DegreeRule(p, n)
    gens: list[tuple[str, int]] = [("1", 0)]
    for j in range(1, p):
        gens.append((_c(0, j, "y"), rule.c_degree(0, j)))
        for i in range(1, n):
            gens.append((_c(i, j, "y"), rule.c_degree(i, j)))
    gidx = {name: k for k, (name, _) in enumerate(gens)}
    rels: list[tuple[tuple[int, ...], ...]] = []

    def rel(entries: dict[str, tuple[int, ...]]):
        vec: list[tuple[int, ...]] = [()] * len(gens)
        for name, poly in entries.items():
            vec[gidx[name]] = poly
        rels.append(tuple(vec))

    for j in range(1, p):
        for i in range(1, n):
            if m >= n:
                rel({_c(i, j, "y"): (p,)})
            elif i == m:
                rel({_c(m, j, "y"): (p,), _c(0, j, "y"): (0, -1)})
            else:
                rel({_c(i, j, "y"): (p,)})
                rel({_c(i, j, "y"): (0, 1)})
    return KmPresentation(p=p, m=m, gens=tuple(gens), rels=tuple(rels))


def build_km_rost(p: int, n: int, m: int) -> CatalogObject:
    return CatalogObject(
        id="km_rost", params={"p": p, "n": n, "m": m}, km=km_rost(p, n, m)
    )


def gr_m_rost_ring(p: int, n: int, m: int, var: str = "y") -> PresentedRing:
    """Geometric-filtration graded ring: the Chow ring modulo the torsion
    classes c_i with i != 0, m (all of them survive when m >= n)."""
    _require_prime(p)
    _require_n(n)
    if m >= n:
        return chow_rost_ring(p, n, var)
    rule = DegreeRule(p, n)
    classes = [BasisClass("1", 0, 0)]
    for j in range(1, p):
        classes.append(BasisClass(_c(0, j, var), rule.c_degree(0, j), 0))
        classes.append(BasisClass(_c(m, j, var), rule.c_degree(m, j), 1))
    products = {}
    for ji in range(1, p):
        for jj in range(ji, p):
            if ji + jj <= p - 1:
                key = tuple(sorted((_c(0, ji, var), _c(0, jj, var))))
                products[key] = ((_c(0, ji + jj, var), p),)
    gens = [_c(0, j, var) for j in range(1, p)] + [_c(m, j, var) for j in range(1, p)]
    return _sorted_ring(p, classes, products, generators=gens)


def build_gr_m_rost(p: int, n: int, m: int) -> CatalogObject:
    if m < 1:
        raise CatalogError("m must be >= 1")
    return CatalogObject(
        id="gr_m_rost",
        params={"p": p, "n": n, "m": m},
        ring=gr_m_rost_ring(p, n, m),
        km=km_rost(p, n, m),
    )


def build_product_rost(p: int, n: int) -> CatalogObject:
    """Two-factor product: Chow ring of the first factor tensored with the
    split truncated polynomial ring of the second."""
    chow1 = chow_rost_ring(p, n, var="y_1")
    bar1 = bar_rost_ring(p, n, var="y_1")
    bar2 = bar_rost_ring(p, n, var="y_2")
    ring = ring_tensor(chow1, bar2)
    bar = ring_tensor(bar1, bar2)
    rules: dict = {}
    base_rules = rost_res_rules(p, n, var="y_1")
    for j2 in range(0, p):
        suffix = "" if j2 == 0 else _yname("y_2", j2)
        for src, images in base_rules.items():
            if j2 == 0:
                name = src
            else:
                name = suffix if src == "1" else f"{src}*{suffix}"
            mapped = []
            for tgt, coeff in images:
                if j2 == 0:
                    mapped.append((tgt, coeff))
                else:
                    mapped.append((suffix if tgt == "1" else f"{tgt}*{suffix}", coeff))
            rules[name] = tuple(mapped)
    res = map_from_rules(ring.module(), bar.module(), rules)
    return CatalogObject(
        id="product_rost", params={"p": p, "n": n}, ring=ring, bar=bar, res=res
    )


# ---------------------------------------------------------------------------
# quadric-side entries (p = 2)
# ---------------------------------------------------------------------------


def _hname(k: int) -> str:
    return "1" if k == 0 else ("h" if k == 1 else f"h^{k}")


def _uname(i: int, k: int) -> str:
    u = f"u_{i}"
    return u if k == 0 else f"{u}*{_hname(k)}"


def pfister_neighbor_ring(n: int) -> PresentedRing:
    """Chow ring of a maximal neighbor: polynomial class h with u_0 = h^{2^n-1},
    torsion classes u_1..u_{n-1}; relations u_i u_j = 0 and 2 u_k = 0 (k >= 1).

    The monomial basis this produces: h^k free for k <= 2^{n+1}-3 (the square
    u_0^2 kills everything above) and u_i h^k torsion for k <= 2^n-2."""
    _require_n(n)
    top_free = 2 ** (n + 1) - 3
    top_u = 2**n - 2
    classes = [BasisClass("1", 0, 0)]
    for k in range(1, top_free + 1):
        classes.append(BasisClass(_hname(k), k, 0))
    for i in range(1, n):
        du = 2**n - 2**i
        for k in range(0, top_u + 1):
            classes.append(BasisClass(_uname(i, k), du + k, 1))
    products = {}
    for a in range(1, top_free + 1):
        for b in range(a, top_free + 1):
            if a + b <= top_free:
                products[tuple(sorted((_hname(a), _hname(b))))] = ((_hname(a + b), 1),)
    for i in range(1, n):
        for k in range(0, top_u + 1):
            for a in range(1, top_free + 1):
                if k + a <= top_u:
                    key = tuple(sorted((_hname(a), _uname(i, k))))
                    products[key] = ((_uname(i, k + a), 1),)
    gens = ["h"] + [_uname(i, 0) for i in range(1, n)]
    return _sorted_ring(2, classes, products, generators=gens)


def pfister_bar_ring(n: int) -> PresentedRing:
    """Split form: Z_(2)[y, h]/(y^2, h^{2^n-1} - 2y).

    The relation forces y h^k = 0 for k >= 2^n-1 (multiply it by y), so the
    additive basis is h^k and y h^k with k <= 2^n-2; the top class y h^{2^n-2}
    sits in degree 2^{n+1}-3, inside the dimension bound 2^{n+1}-1."""
    _require_n(n)
    hcap = 2**n - 2
    ydeg = 2**n - 1

    def yname(k: int) -> str:
        return "y" if k == 0 else f"y*{_hname(k)}"

    classes = [BasisClass("1", 0, 0)]
    for k in range(1, hcap + 1):
        classes.append(BasisClass(_hname(k), k, 0))
    for k in range(0, hcap + 1):
        classes.append(BasisClass(yname(k), ydeg + k, 0))
    products = {}
    for a in range(1, hcap + 1):
        for b in range(a, hcap + 1):
            t = a + b
            key = tuple(sorted((_hname(a), _hname(b))))
            if t <= hcap:
                products[key] = ((_hname(t), 1),)
            elif t - ydeg <= hcap:
                products[key] = ((yname(t - ydeg), 2),)
    for a in range(1, hcap + 1):
        for k in range(0, hcap + 1):
            if a + k <= hcap:
                key = tuple(sorted((_hname(a), yname(k))))
                products[key] = ((yname(a + k), 1),)
    return _sorted_ring(2, classes, products, generators=["h", "y"])


def pfister_res_rules(n: int) -> dict:
    hcap = 2**n - 2
    top_free = 2 ** (n + 1) - 3
    rules = {"1": (("1", 1),)}
    for k in range(1, top_free + 1):
        if k <= hcap:
            rules[_hname(k)] = ((_hname(k), 1),)
        else:
            shift = k - (2**n - 1)
            tgt = "y" if shift == 0 else f"y*{_hname(shift)}"
            rules[_hname(k)] = ((tgt, 2),)
    for i in range(1, n):
        for k in range(0, hcap + 1):
            rules[_uname(i, k)] = ()
    return rules


def build_pfister_neighbor_chow(n: int) -> CatalogObject:
    ring = pfister_neighbor_ring(n)
    bar = pfister_bar_ring(n)
    res = map_from_rules(ring.module(), bar.module(), pfister_res_rules(n))
    return CatalogObject(
        id="pfister_neighbor_chow", params={"p": 2, "n": n}, ring=ring, bar=bar, res=res
    )


def gr_m_pfister_ring(n: int, m: int) -> PresentedRing:
    """Geometric graded of a maximal neighbor: only u_m survives among the
    torsion classes (everything survives when m >= n)."""
    _require_n(n)
    if m < 1:
        raise CatalogError("m must be >= 1")
    if m >= n:
        return pfister_neighbor_ring(n)
    top_free = 2 ** (n + 1) - 3
    top_u = 2**n - 2
    du = 2**n - 2**m
    classes = [BasisClass("1", 0, 0)]
    for k in range(1, top_free + 1):
        classes.append(BasisClass(_hname(k), k, 0))
    for k in range(0, top_u + 1):
        classes.append(BasisClass(_uname(m, k), du + k, 1))
    products = {}
    for a in range(1, top_free + 1):
        for b in range(a, top_free + 1):
            if a + b <= top_free:
                products[tuple(sorted((_hname(a), _hname(b))))] = ((_hname(a + b), 1),)
    for k in range(0, top_u + 1):
        for a in range(1, top_free + 1):
            if k + a <= top_u:
                key = tuple(sorted((_hname(a), _uname(m, k))))
                products[key] = ((_uname(m, k + a), 1),)
    return _sorted_ring(2, classes, products, generators=["h", _uname(m, 0)])


GR_M_PFISTER_NOTE = (
    "relation 2*u_m used in place of the squared form 2*u_m^2; "
    "with u_m^2 = 0 the squared relation is redundant and would leave u_m "
    "integral, contradicting the stated additive structure"
)


def build_gr_m_pfister(n: int, m: int) -> CatalogObject:
    return CatalogObject(
        id="gr_m_pfister",
        params={"p": 2, "n": n, "m": m},
        ring=gr_m_pfister_ring(n, m),
        notes=(GR_M_PFISTER_NOTE,),
    )


def excellent_quadric_ring(n: int, d: int, di: tuple[int, ...]) -> PresentedRing:
    """Chow ring of an excellent quadric of odd dimension d: h^{d+1} = 0,
    torsion classes c_i(d) with h^{d_i} c_i(d) = 0, 2 c_i(d) = 0 and
    c_i(d) c_j(d) = 0.  The cutoffs d_i are caller-supplied data."""
    _require_n(n)
    if d % 2 == 0:
        raise CatalogError(f"d={d} must be odd")
    if not (2**n - 1 <= d <= 2 ** (n + 1) - 2):
        raise CatalogError(f"d={d} out of range for n={n}")
    di = tuple(int(x) for x in di)
    if len(di) != n - 1:
        raise CatalogError(f"expected {n - 1} cutoffs d_i, got {len(di)}")
    if any(x <= 0 for x in di) or any(a < b for a, b in zip(di, di[1:])):
        raise CatalogError("cutoffs d_i must be positive and nonincreasing")

    def cn(i: int, k: int) -> str:
        c = f"c_{i}(d)"
        return c if k == 0 else f"{c}*{_hname(k)}"

    classes = [BasisClass("1", 0, 0)]
    for k in range(1, d + 1):
        classes.append(BasisClass(_hname(k), k, 0))
    for i in range(1, n):
        dc = 2**n - 2**i
        for k in range(0, di[i - 1]):
            classes.append(BasisClass(cn(i, k), dc + k, 1))
    products = {}
    for a in range(1, d + 1):
        for b in range(a, d + 1):
            if a + b <= d:
                products[tuple(sorted((_hname(a), _hname(b))))] = ((_hname(a + b), 1),)
    for i in range(1, n):
        for k in range(0, di[i - 1]):
            for a in range(1, d + 1):
                if k + a <= di[i - 1] - 1:
                    key = tuple(sorted((_hname(a), cn(i, k))))
                    products[key] = ((cn(i, k + a), 1),)
    gens = ["h"] + [cn(i, 0) for i in range(1, n)]
    return _sorted_ring(2, classes, products, generators=gens)


def excellent_bar_ring(d: int) -> PresentedRing:
    """Split-side image model: the free ring Z_(2)[h]/(h^{d+1})."""
    classes = [BasisClass("1", 0, 0)]
    for k in range(1, d + 1):
        classes.append(BasisClass(_hname(k), k, 0))
    products = {}
    for a in range(1, d + 1):
        for b in range(a, d + 1):
            if a + b <= d:
                products[tuple(sorted((_hname(a), _hname(b))))] = ((_hname(a + b), 1),)
    return _sorted_ring(2, classes, products, generators=["h"])


def build_excellent_quadric_chow(n: int, d: int, di) -> CatalogObject:
    ring = excellent_quadric_ring(n, d, tuple(di))
    bar = excellent_bar_ring(d)
    rules = {"1": (("1", 1),)}
    for b in ring.basis:
        if b.name == "1":
            continue
        rules[b.name] = ((b.name, 1),) if b.torsion_exp == 0 else ()
    res = map_from_rules(ring.module(), bar.module(), rules)
    return CatalogObject(
        id="excellent_quadric_chow",
        params={"p": 2, "n": n, "d": d, "di": list(di)},
        ring=ring,
        bar=bar,
        res=res,
    )


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def catalog_build(id: str, params: dict) -> CatalogObject:
    params = dict(params)
    try:
        if id == "chow_rost":
            return build_chow_rost(params["p"], params["n"])
        if id == "bar_rost":
            return build_bar_rost(params["p"], params["n"])
        if id == "omega_image_rost":
            return build_omega_image_rost(params["p"], params["n"])
        if id == "km_rost":
            return build_km_rost(params["p"], params["n"], params["m"])
        if id == "gr_m_rost":
            return build_gr_m_rost(params["p"], params["n"], params["m"])
        if id == "product_rost":
            return build_product_rost(params["p"], params["n"])
        if id == "pfister_neighbor_chow":
            _check_p2(params)
            return build_pfister_neighbor_chow(params["n"])
        if id == "gr_m_pfister":
            _check_p2(params)
            return build_gr_m_pfister(params["n"], params["m"])
        if id == "excellent_quadric_chow":
            _check_p2(params)
            return build_excellent_quadric_chow(
                params["n"], params["d"], params.get("di") or ()
            )
    except KeyError as exc:
        raise CatalogError(f"{id} requires parameter {exc.args[0]!r}") from None
    raise CatalogError(f"unknown catalog id {id!r}")


def _check_p2(params: dict):
    if params.get("p", 2) != 2:
        raise CatalogError("quadric-side entries exist only at p = 2")


def restriction_map(obj: CatalogObject) -> GradedMap:
    if obj.res is None:
        raise CatalogError(f"{obj.id} has no restriction map")
    return obj.res
