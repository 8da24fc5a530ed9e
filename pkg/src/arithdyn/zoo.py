"""Built-in families of self-maps.

Each family turns a parameter dict into a :class:`ZooMap`, which always has a
projective form and, when they are polynomial, the affine map and inverse.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from sympy import Matrix

from .algebra.poly import MultiPoly, as_rational
from .errors import InvalidParameterError
from .maps import (AffinePolyMap, ProjRationalMap, homogenize,
                   homogenizing_variable, inverse_check, saturate)


@dataclass(frozen=True)
class ZooMap:
    name: str
    params: dict
    projective: ProjRationalMap
    forward: Optional[AffinePolyMap] = None
    inverse: Optional[AffinePolyMap] = None
    projective_inverse: Optional[ProjRationalMap] = None
    exponent_matrix: Optional[tuple] = None

    @property
    def dimension(self):
        return self.projective.dimension

    @property
    def has_inverse(self):
        return self.projective_inverse is not None


@dataclass(frozen=True)
class MapZooEntry:
    name: str
    description: str
    params: dict  # name -> (kind, default, help)
    build: Callable = field(repr=False)

    def __call__(self, **params):
        return self.build(**_validate(self, params))


def _validate(entry, params):
    unknown = set(params) - set(entry.params)
    if unknown:
        raise InvalidParameterError(
            f"{entry.name}: unknown parameter(s) {sorted(unknown)}; "
            f"expected {sorted(entry.params)}")
    out = {}
    for key, (kind, default, _) in entry.params.items():
        value = params.get(key, default)
        if value is None:
            raise InvalidParameterError(f"{entry.name}: parameter {key!r} is required")
        try:
            if kind == "rational":
                value = as_rational(Fraction(value) if isinstance(value, (str, float)) else value)
            elif kind == "int":
                if isinstance(value, str):
                    value = int(value)
                if not isinstance(value, int) or isinstance(value, bool):
                    raise TypeError
            elif kind == "matrix":
                value = tuple(tuple(int(x) for x in row) for row in value)
        except (TypeError, ValueError):
            raise InvalidParameterError(
                f"{entry.name}: parameter {key!r} must be {kind}, got {value!r}") from None
        out[key] = value
    return out


def _affine(strings, variables, name):
    return AffinePolyMap.from_strings(strings, variables, name)


def _with_projective(name, params, fwd, inv=None):
    proj = homogenize(fwd, name)
    proj_inv = homogenize(inv, name + "^-1") if inv is not None else None
    return ZooMap(name, params, proj, fwd, inv, proj_inv)


def _henon(a, b):
    if a == 0:
        raise InvalidParameterError("henon: parameter a must be nonzero")
    V = ("x", "y")
    x, y = MultiPoly.gens(V)
    fwd = AffinePolyMap((y, y ** 2 + x * a + b), "henon")
    # (u, v) = f^{-1}(x, y): v = x and a u + v^2 + b = y
    inv = AffinePolyMap(((y - x ** 2 - b) / a, x), "henon^-1")
    return _with_projective("henon", {"a": a, "b": b}, fwd, inv)


def _gs02(d):
    if d < 1:
        raise InvalidParameterError("gs02: parameter d must be >= 1")
    V = ("x", "y", "z")
    x, y, z = MultiPoly.gens(V)
    fwd = AffinePolyMap((y * x ** d + z, y ** (d + 1) + x, y), "gs02")
    t = y - z ** (d + 1)
    inv = AffinePolyMap((t, z, x - z * t ** d), "gs02^-1")
    return _with_projective("gs02", {"d": d}, fwd, inv)


def _shift(n):
    if n < 1:
        raise InvalidParameterError("shift: parameter n must be >= 1")
    V = ("x",) if n == 1 else tuple(f"x{i + 1}" for i in range(n))
    gens = MultiPoly.gens(V)
    fwd = AffinePolyMap(tuple(g + 1 for g in gens), "shift")
    inv = AffinePolyMap(tuple(g - 1 for g in gens), "shift^-1")
    return _with_projective("shift", {"n": n}, fwd, inv)


def _swap():
    V = ("x", "y")
    x, y = MultiPoly.gens(V)
    fwd = AffinePolyMap((y, x), "swap")
    return _with_projective("swap", {}, fwd, AffinePolyMap((y, x), "swap"))


def _identity(n):
    if n < 1:
        raise InvalidParameterError("identity: parameter n must be >= 1")
    V = ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i + 1}" for i in range(n))
    fwd = AffinePolyMap.identity(V)
    return _with_projective("identity", {"n": n}, fwd, fwd)


def _cremona():
    V = ("x", "y", "z")
    x, y, z = MultiPoly.gens(V)
    proj = saturate((y * z, x * z, x * y), "cremona")
    return ZooMap("cremona", {}, proj, projective_inverse=proj,
                  exponent_matrix=((-1, 0), (0, -1)))


def monomial_projective(matrix, variables=None, name="monomial"):
    """Projective form of ``x -> x^M`` for an integer matrix M (rows = components).

    Negative exponents are allowed; the Laurent monomials ``x^{M_i}`` and 1
    are multiplied by a common monomial to make forms of one degree.
    """
    n = len(matrix)
    if variables is None:
        variables = ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i + 1}" for i in range(n))
    w = homogenizing_variable(variables)
    ext = tuple(variables) + (w,)
    rows = [list(r) for r in matrix] + [[0] * n]
    # exponent of w in each component: -sum(row) before shifting
    full = [r + [-sum(r)] for r in rows]
    shift = [-min(col) for col in zip(*full)]
    exps = [[e + s for e, s in zip(r, shift)] for r in full]
    deg = {sum(e) for e in exps}
    assert len(deg) == 1
    return saturate([MultiPoly(ext, {tuple(e): 1}) for e in exps], name)


def _monomial(matrix):
    n = len(matrix)
    if n < 1 or any(len(r) != n for r in matrix):
        raise InvalidParameterError("monomial: matrix must be square and nonempty")
    det = Matrix(matrix).det()
    if det == 0:
        raise InvalidParameterError("monomial: matrix must have nonzero determinant")
    V = ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i + 1}" for i in range(n))
    params = {"matrix": [list(r) for r in matrix]}
    proj = monomial_projective(matrix, V)
    fwd = inv = proj_inv = None
    if all(e >= 0 for r in matrix for e in r):
        fwd = AffinePolyMap(tuple(MultiPoly(V, {tuple(r): 1}) for r in matrix),
                            "monomial")
    if abs(det) == 1:
        minv = Matrix(matrix).inv()
        minv = [[int(minv[i, j]) for j in range(n)] for i in range(n)]
        proj_inv = monomial_projective(minv, V, "monomial^-1")
        if all(e >= 0 for r in minv for e in r):
            inv = AffinePolyMap(tuple(MultiPoly(V, {tuple(r): 1}) for r in minv),
                                "monomial^-1")
    return ZooMap("monomial", params, proj, fwd, inv, proj_inv,
                  tuple(tuple(r) for r in matrix))


ZOO = {
    e.name: e for e in [
        MapZooEntry("henon", "Henon map (x, y) -> (y, y^2 + a*x + b), a != 0",
                    {"a": ("rational", 1, "linear coefficient, nonzero"),
                     "b": ("rational", 0, "constant term")}, _henon),
        MapZooEntry("gs02", "(x, y, z) -> (y*x^d + z, y^(d+1) + x, y) on A^3",
                    {"d": ("int", 2, "degree parameter, >= 1")}, _gs02),
        MapZooEntry("monomial", "monomial map x -> x^M, M integer with det != 0",
                    {"matrix": ("matrix", None, "square integer matrix, rows = components")},
                    _monomial),
        MapZooEntry("cremona", "standard quadratic involution [yz : xz : xy] of P^2",
                    {}, _cremona),
        MapZooEntry("shift", "translation x -> x + 1 on A^n",
                    {"n": ("int", 1, "dimension")}, _shift),
        MapZooEntry("swap", "(x, y) -> (y, x)", {}, _swap),
        MapZooEntry("identity", "identity of A^n", {"n": ("int", 2, "dimension")},
                    _identity),
    ]
}


def zoo_get(name, **params) -> ZooMap:
    """Build a zoo map by family name; parameters are validated per family."""
    try:
        entry = ZOO[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown zoo map {name!r}; available: {', '.join(sorted(ZOO))}") from None
    return entry(**params)


def zoo_listing():
    return [(e.name, e.description,
             {k: {"type": v[0], "default": v[1], "help": v[2]} for k, v in e.params.items()})
            for e in ZOO.values()]


def check_zoo_map(zm: ZooMap) -> bool:
    """Inverse check on whichever inverse forms the entry carries."""
    ok = True
    if zm.forward is not None and zm.inverse is not None:
        ok &= inverse_check(zm.forward, zm.inverse)
    if zm.projective_inverse is not None:
        ok &= inverse_check(zm.projective, zm.projective_inverse)
    return ok
