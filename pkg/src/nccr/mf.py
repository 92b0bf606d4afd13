"""Matrix factorizations of a hypersurface f.

A factorization is a pair of square polynomial matrices with
phi*psi = psi*phi = sign*f*I.  The sign is kept explicitly because the
Knorrer construction naturally produces f - uv where uv - f is wanted.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .jsonio import SCHEMA_VERSION, SchemaError, check_version
from .scalars import Polynomial, poly_divmod

Matrix = tuple[tuple[Polynomial, ...], ...]


class MFError(ValueError):
    pass


@dataclass(frozen=True)
class HypersurfaceRing:
    variables: tuple[str, ...]
    f: Polynomial

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise MFError("repeated variable name")
        if self.f.is_zero:
            raise MFError("the hypersurface equation must be nonzero")
        if self.f.is_constant():
            raise MFError("the hypersurface equation must not be a unit")
        extra = set(self.f.variables) - set(self.variables)
        if extra:
            raise MFError(f"f uses undeclared variables {sorted(extra)}")

    @staticmethod
    def parse(variables: Sequence[str], f: str) -> "HypersurfaceRing":
        return HypersurfaceRing(tuple(variables), Polynomial.parse(f))


def as_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    out = []
    for row in rows:
        out.append(tuple(Polynomial.parse(x) if isinstance(x, str) else Polynomial.coerce(x) for x in row))
    return tuple(out)


def _square(m: Matrix, name: str) -> int:
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise MFError(f"{name} must be a nonempty square matrix")
    return n


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    zero = Polynomial()
    return tuple(tuple(sum((a[i][t] * b[t][j] for t in range(k)), zero) for j in range(m)) for i in range(n))


def scalar_matrix(n: int, p: Polynomial) -> Matrix:
    zero = Polynomial()
    return tuple(tuple(p if i == j else zero for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class MatrixFactorization:
    ring: HypersurfaceRing
    phi: Matrix
    psi: Matrix
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise MFError("sign must be +1 or -1")
        a = _square(self.phi, "phi")
        b = _square(self.psi, "psi")
        if a != b:
            raise MFError(f"phi is {a}x{a} but psi is {b}x{b}")

    @property
    def size(self) -> int:
        return len(self.phi)

    @staticmethod
    def create(ring: HypersurfaceRing, phi, psi, sign: int | None = None) -> "MatrixFactorization":
        """Build from nested lists; without ``sign`` it is read off phi*psi."""
        phi, psi = as_matrix(phi), as_matrix(psi)
        if sign is None:
            _square(phi, "phi")
            _square(psi, "psi")
            if len(phi) != len(psi):
                raise MFError("phi and psi have different sizes")
            sign = detect_sign(ring, phi, psi)
        return MatrixFactorization(ring, phi, psi, sign)


def detect_sign(ring: HypersurfaceRing, phi: Matrix, psi: Matrix) -> int:
    """+1 or -1 according to the top-left entry of phi*psi (+1 if neither)."""
    top = mat_mul(phi[:1], psi)[0][0]
    return -1 if top == -ring.f else 1


@dataclass(frozen=True)
class Witness:
    product: str  # "phi*psi" or "psi*phi"
    row: int  # 1-based
    col: int
    expected: Polynomial
    actual: Polynomial

    def __str__(self) -> str:
        return f"{self.product} entry ({self.row},{self.col}) is {self.actual}, expected {self.expected}"


@dataclass(frozen=True)
class Validation:
    valid: bool
    sign: int
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.valid


def validate(mf: MatrixFactorization) -> Validation:
    """Check phi*psi = psi*phi = sign*f*I; the witness is the first wrong
    entry in row-major order, phi*psi before psi*phi."""
    target = mf.ring.f.scale(mf.sign)
    zero = Polynomial()
    for name, x, y in (("phi*psi", mf.phi, mf.psi), ("psi*phi", mf.psi, mf.phi)):
        prod = mat_mul(x, y)
        for i, row in enumerate(prod):
            for j, entry in enumerate(row):
                want = target if i == j else zero
                if entry != want:
                    return Validation(False, mf.sign, Witness(name, i + 1, j + 1, want, entry))
    return Validation(True, mf.sign)


def _require_valid(mf: MatrixFactorization) -> None:
    v = validate(mf)
    if not v:
        raise MFError(f"not a matrix factorization: {v.witness}")


def syzygy(mf: MatrixFactorization) -> MatrixFactorization:
    """The syzygy of coker(phi) is coker(psi): swap the pair."""
    _require_valid(mf)
    return MatrixFactorization(mf.ring, mf.psi, mf.phi, mf.sign)


def knorrer(mf: MatrixFactorization, u: str = "u", v: str = "v") -> MatrixFactorization:
    """Factorization of uv - f from one of f.

    With phi*psi = s*f*I the blocks Phi = [[-phi, -u], [s*v, psi]] and
    Psi = [[-psi, -u], [s*v, phi]] give Phi*Psi = -s*(uv - f)*I.
    """
    _require_valid(mf)
    if u == v:
        raise MFError("the two new variables must differ")
    for name in (u, v):
        if name in mf.ring.variables:
            raise MFError(f"variable {name!r} already used by the ring")
    s = mf.sign
    n = mf.size
    U = scalar_matrix(n, Polynomial.var(u).scale(-1))
    V = scalar_matrix(n, Polynomial.var(v).scale(s))

    def neg(m: Matrix) -> Matrix:
        return tuple(tuple(-x for x in row) for row in m)

    def block(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
        return tuple(a[i] + b[i] for i in range(n)) + tuple(c[i] + d[i] for i in range(n))

    ring = HypersurfaceRing(mf.ring.variables + (u, v), Polynomial.var(u) * Polynomial.var(v) - mf.ring.f)
    big_phi = block(neg(mf.phi), U, V, mf.psi)
    big_psi = block(neg(mf.psi), U, V, mf.phi)
    return MatrixFactorization(ring, big_phi, big_psi, -s)


def determinant(m: Matrix) -> Polynomial:
    """Laplace expansion along the rows, memoised on the remaining columns."""
    n = _square(m, "matrix")

    @functools.lru_cache(maxsize=None)
    def minor(row: int, cols: tuple[int, ...]) -> Polynomial:
        if row == n:
            return Polynomial.const(1)
        total = Polynomial()
        for k, c in enumerate(cols):
            entry = m[row][c]
            if entry.is_zero:
                continue
            rest = minor(row + 1, cols[:k] + cols[k + 1 :])
            term = entry * rest
            total = total + (term if k % 2 == 0 else -term)
        return total

    return minor(0, tuple(range(n)))


def adjugate(m: Matrix) -> Matrix:
    n = _square(m, "matrix")
    if n == 1:
        return ((Polynomial.const(1),),)

    def minor(i: int, j: int) -> Matrix:
        return tuple(tuple(row[:j] + row[j + 1 :]) for k, row in enumerate(m) if k != i)

    return tuple(
        tuple(determinant(minor(j, i)).scale(-1 if (i + j) % 2 else 1) for j in range(n)) for i in range(n)
    )


def partner(ring: HypersurfaceRing, phi: Matrix, sign: int = 1) -> Matrix | None:
    """The psi with phi*psi = sign*f*I, when it exists with polynomial entries.

    From adj(phi)*phi = det(phi)*I, psi = sign*f*adj(phi)/det(phi); the
    division is carried out exactly and None is returned when it leaves a
    remainder.
    """
    phi = as_matrix(phi)
    det = determinant(phi)
    if det.is_zero:
        return None
    adj = adjugate(phi)
    out = []
    for row in adj:
        new = []
        for x in row:
            q, r = poly_divmod(x * ring.f.scale(sign), det)
            if not r.is_zero:
                return None
            new.append(q)
        out.append(tuple(new))
    return tuple(out)


def determinant_identity(mf: MatrixFactorization) -> bool:
    """det(phi) * det(psi) == (sign*f)^size."""
    return determinant(mf.phi) * determinant(mf.psi) == mf.ring.f.scale(mf.sign) ** mf.size


def cokernel_presentation(mf: MatrixFactorization) -> dict:
    """Presentation of coker(phi) over S/(f), one list per column of phi.

    ``columns_mod_f`` holds the same entries reduced modulo f; when all of
    them vanish the columns generate the zero submodule over the
    hypersurface ring.
    """
    _require_valid(mf)
    n = mf.size
    cols = [[mf.phi[i][j] for i in range(n)] for j in range(n)]
    reduced = [[poly_divmod(x, mf.ring.f)[1] for x in col] for col in cols]
    return {
        "schema_version": SCHEMA_VERSION,
        "ring": ring_to_json(mf.ring),
        "columns": [[str(x) for x in col] for col in cols],
        "columns_mod_f": [[str(x) for x in col] for col in reduced],
        "relations_vanish_mod_f": all(x.is_zero for col in reduced for x in col),
    }


# ---------------------------------------------------------------------------
# JSON


def ring_to_json(ring: HypersurfaceRing) -> dict:
    return {"variables": list(ring.variables), "f": str(ring.f)}


def mf_to_json(mf: MatrixFactorization) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "ring": ring_to_json(mf.ring),
        "phi": [[str(x) for x in row] for row in mf.phi],
        "psi": [[str(x) for x in row] for row in mf.psi],
        "sign": mf.sign,
    }


def _poly(x: Any, path: str) -> Polynomial:
    if isinstance(x, int) and not isinstance(x, bool):
        return Polynomial.const(x)
    if not isinstance(x, str):
        raise SchemaError(path, "expected a polynomial string")
    try:
        p = Polynomial.parse(x)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None
    return p


def _matrix(data: Any, path: str) -> Matrix:
    if not isinstance(data, list) or not data:
        raise SchemaError(path, "expected a nonempty list of rows")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list):
            raise SchemaError(f"{path}[{i}]", "expected a list of entries")
        rows.append(tuple(_poly(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)))
    return tuple(rows)


def mf_from_json(data: Any) -> MatrixFactorization:
    check_version(data)
    ring_raw = data.get("ring")
    if not isinstance(ring_raw, Mapping):
        raise SchemaError("$.ring", "expected an object with 'variables' and 'f'")
    variables = ring_raw.get("variables")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise SchemaError("$.ring.variables", "expected a list of names")
    f = _poly(ring_raw.get("f"), "$.ring.f")
    for key in ("phi", "psi"):
        if key not in data:
            raise SchemaError("$", f"missing '{key}'")
    phi = _matrix(data["phi"], "$.phi")
    psi = _matrix(data["psi"], "$.psi")
    sign = data.get("sign")
    if sign is not None and sign not in (1, -1):
        raise SchemaError("$.sign", "expected 1 or -1")
    try:
        ring = HypersurfaceRing(tuple(variables), f)
        if sign is None:
            return MatrixFactorization.create(ring, phi, psi)
        return MatrixFactorization(ring, phi, psi, sign)
    except MFError as exc:
        raise SchemaError("$", str(exc)) from None
