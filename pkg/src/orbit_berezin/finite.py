"""Orbit POVMs on finite groups and brute-force Berezin spectra.

Haar measure is counting measure divided by ``|G|``; each coset of
``Omega = G/K`` carries mass ``|K|/|G|``.

The catalog groups and their irreducible representations are constructed
explicitly; characters are always traces of the stored matrices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .numerics import general_eigenvalues, symmetric_eigenvalues


class IllConditionedVectorError(ValueError):
    """Stabilizer membership of some element is numerically ambiguous."""


class InternalConsistencyError(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``product[a, b]`` is the index of ``a * b``.
    """

    name: str
    product: np.ndarray
    inverse: np.ndarray
    identity: int
    labels: list = field(default_factory=list)
    kind: str = ""
    param: int | None = None

    def __post_init__(self):
        self.product = np.asarray(self.product, dtype=np.intp)
        self.inverse = np.asarray(self.inverse, dtype=np.intp)
        n = self.order
        if self.product.shape != (n, n):
            raise ValueError("product table must be square")
        idx = np.arange(n)
        if not (np.array_equal(self.product[self.identity], idx)
                and np.array_equal(self.product[:, self.identity], idx)):
            raise ValueError("identity law fails")
        if not (np.all(self.product[idx, self.inverse] == self.identity)
                and np.all(self.product[self.inverse, idx] == self.identity)):
            raise ValueError("inverse law fails")
        P = self.product
        if not np.array_equal(_assoc_left(P), _assoc_right(P)):
            raise ValueError("associativity fails")

    @property
    def order(self) -> int:
        return len(self.inverse)

    def mul(self, a: int, b: int) -> int:
        return int(self.product[a, b])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.product, self.product.T))

    def center(self) -> list[int]:
        P = self.product
        return [g for g in range(self.order) if np.array_equal(P[g], P[:, g])]

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _assoc_left(P):
    # (a b) c for all a, b, c
    return P[P[:, :, None], np.arange(P.shape[0])[None, None, :]]


def _assoc_right(P):
    # a (b c)
    return P[np.arange(P.shape[0])[:, None, None], P[None, :, :]]


def _group_from_elements(name, elements, mul, kind, param=None):
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    product = np.empty((n, n), dtype=np.intp)
    for a, x in enumerate(elements):
        for b, y in enumerate(elements):
            product[a, b] = index[mul(x, y)]
    identity = next(i for i in range(n) if np.array_equal(product[i], np.arange(n)))
    inverse = np.argmax(product == identity, axis=1)
    return FiniteGroup(name, product, inverse, identity, list(elements), kind, param)


def _quaternion_matrices():
    one = np.eye(2, dtype=complex)
    qi = np.array([[1j, 0], [0, -1j]])
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    qk = qi @ qj
    return {"1": one, "i": qi, "j": qj, "k": qk}


_Q8_UNITS = _quaternion_matrices()


def _q8_matrix(el):
    sign, unit = el
    return sign * _Q8_UNITS[unit]


def _q8_mul(x, y):
    M = _q8_matrix(x) @ _q8_matrix(y)
    for unit, U in _Q8_UNITS.items():
        for sign in (1, -1):
            if np.allclose(M, sign * U):
                return (sign, unit)
    raise InternalConsistencyError("quaternion product not closed")


def make_group(spec: str, n: int | None = None) -> FiniteGroup:
    """Build a catalog group.

    ``spec`` is one of ``cyclic``, ``dihedral``, ``symmetric3``,
    ``quaternion8``, ``frobenius21``; the parameter may be passed as ``n``
    or inline, e.g. ``make_group("dihedral(4)")``.
    """
    match = re.fullmatch(r"\s*([a-z0-9_]+)\s*(?:\(\s*(-?\d+)\s*\))?\s*", spec.lower())
    if not match:
        raise ValueError(f"unrecognised group spec {spec!r}")
    kind, inline = match.groups()
    if inline is not None:
        if n is not None and n != int(inline):
            raise ValueError("conflicting group parameters")
        n = int(inline)

    if kind == "cyclic":
        if n is None or n < 1:
            raise ValueError("cyclic(n) needs n >= 1")
        return _group_from_elements(f"cyclic({n})", list(range(n)),
                                    lambda a, b: (a + b) % n, "cyclic", n)
    if kind == "dihedral":
        if n is None or n < 3:
            raise ValueError("dihedral(n) needs n >= 3")
        els = [(i, f) for f in (0, 1) for i in range(n)]

        def mul(x, y):
            (i, f), (l, g) = x, y
            return ((i + (l if f == 0 else -l)) % n, f ^ g)

        return _group_from_elements(f"dihedral({n})", els, mul, "dihedral", n)
    if n is not None:
        raise ValueError(f"{kind} takes no parameter")
    if kind == "symmetric3":
        import itertools

        els = list(itertools.permutations(range(3)))
        return _group_from_elements("symmetric3", els,
                                    lambda s, t: tuple(s[t[x]] for x in range(3)), "symmetric3")
    if kind == "quaternion8":
        els = [(s, u) for u in ("1", "i", "j", "k") for s in (1, -1)]
        return _group_from_elements("quaternion8", els, _q8_mul, "quaternion8")
    if kind == "frobenius21":
        # a^i b^k with b a b^-1 = a^2
        els = [(i, k) for k in range(3) for i in range(7)]

        def mul(x, y):
            (i, k), (l, m) = x, y
            return ((i + l * pow(2, k)) % 7, (k + m) % 3)

        return _group_from_elements("frobenius21", els, mul, "frobenius21")
    raise ValueError(f"unsupported group {spec!r}")


@dataclass(eq=False)
class Irrep:
    """Unitary irreducible representation as an array of matrices."""

    group: FiniteGroup
    matrices: np.ndarray
    label: str = ""

    def __post_init__(self):
        M = np.asarray(self.matrices, dtype=complex)
        if M.ndim != 3 or M.shape[0] != self.group.order or M.shape[1] != M.shape[2]:
            raise ValueError(f"matrices must have shape (|G|, d, d), got {M.shape}")
        self.matrices = M
        d = self.dimension
        P = self.group.product
        lhs = np.einsum("aij,bjk->abik", M, M)
        if np.max(np.abs(lhs - M[P])) > TOL.homomorphism:
            raise ValueError(f"{self.label}: not a homomorphism")
        eye = np.eye(d)
        if np.max(np.abs(np.einsum("aji,ajk->aik", M.conj(), M) - eye)) > TOL.unitarity:
            raise ValueError(f"{self.label}: not unitary")
        norm = np.mean(np.abs(self.character) ** 2)
        if abs(norm - 1.0) > TOL.schur:
            raise ValueError(f"{self.label}: not irreducible (<chi, chi> = {norm})")

    @property
    def dimension(self) -> int:
        return self.matrices.shape[1]

    @property
    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def __repr__(self):
        return f"Irrep({self.group.name}, {self.label}, dim={self.dimension})"


def _rot(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def irreps_of(group: FiniteGroup) -> list[Irrep]:
    """Complete list of inequivalent irreps of a catalog group."""
    kind, n, els = group.kind, group.param, group.labels
    out = []
    if kind == "cyclic":
        for k in range(n):
            mats = np.exp(2j * np.pi * k * np.arange(n) / n).reshape(n, 1, 1)
            out.append(Irrep(group, mats, f"chi_{k}"))
    elif kind == "dihedral":
        rsigns = (1, -1) if n % 2 == 0 else (1,)
        for a in rsigns:
            for b in (1, -1):
                mats = np.array([[[a ** i * b ** f]] for i, f in els], dtype=complex)
                out.append(Irrep(group, mats, f"1d(r={a},s={b})"))
        S = np.diag([1.0, -1.0])
        for h in range(1, (n - 1) // 2 + 1):
            mats = np.array([_rot(2 * np.pi * h * i / n) @ np.linalg.matrix_power(S, f)
                             for i, f in els])
            out.append(Irrep(group, mats, f"2d(h={h})"))
    elif kind == "symmetric3":
        basis = np.array([[1, -1, 0], [1, 1, -2]], dtype=float).T
        basis /= np.linalg.norm(basis, axis=0)
        perm_mats, signs = [], []
        for s in els:
            P = np.zeros((3, 3))
            for x in range(3):
                P[s[x], x] = 1.0
            perm_mats.append(P)
            signs.append(round(np.linalg.det(P)))
        out.append(Irrep(group, np.ones((6, 1, 1)), "trivial"))
        out.append(Irrep(group, np.array(signs, dtype=float).reshape(6, 1, 1), "sign"))
        out.append(Irrep(group, np.array([basis.T @ P @ basis for P in perm_mats]), "standard"))
    elif kind == "quaternion8":
        for a in (1, -1):
            for b in (1, -1):
                values = {"1": 1, "i": a, "j": b, "k": a * b}
                mats = np.array([[[values[u]]] for _, u in els], dtype=complex)
                out.append(Irrep(group, mats, f"1d(i={a},j={b})"))
        out.append(Irrep(group, np.array([_q8_matrix(e) for e in els]), "2d"))
    elif kind == "frobenius21":
        w3 = np.exp(2j * np.pi / 3)
        for t in range(3):
            mats = np.array([[[w3 ** (t * k)]] for _, k in els])
            out.append(Irrep(group, mats, f"1d(t={t})"))
        w7 = np.exp(2j * np.pi / 7)
        shift = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
        for s in (1, 3):
            A = np.diag([w7 ** s, w7 ** (2 * s), w7 ** (4 * s)])
            mats = np.array([np.linalg.matrix_power(A, i) @ np.linalg.matrix_power(shift, k)
                             for i, k in els])
            out.append(Irrep(group, mats, f"3d(s={s})"))
    else:
        raise ValueError(f"no irrep catalog for {group.name}")
    if sum(r.dimension ** 2 for r in out) != group.order:
        raise InternalConsistencyError(f"irrep catalog of {group.name} incomplete")
    return out


def _unit_vector(irrep, v):
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape != (irrep.dimension,):
        raise ValueError(f"vector must have length {irrep.dimension}")
    if abs(np.linalg.norm(v) - 1.0) > TOL.unit_vector:
        raise ValueError("vector must have unit norm")
    return v


def normalized(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def _is_subgroup(group, elements):
    s = set(elements)
    return group.identity in s and all(group.mul(a, b) in s for a in s for b in s)


def phase_stabilizer(irrep: Irrep, v) -> list[int]:
    """Elements ``g`` with ``rho(g) v`` a unimodular multiple of ``v``."""
    v = _unit_vector(irrep, v)
    W = irrep.matrices @ v
    overlaps = W @ v.conj()
    residual = np.linalg.norm(W - overlaps[:, None] * v[None, :], axis=1)
    defect = np.maximum(residual, 1.0 - np.abs(overlaps))
    ambiguous = (defect > TOL.stabilizer_accept) & (defect < TOL.stabilizer_reject)
    if np.any(ambiguous):
        raise IllConditionedVectorError(
            f"stabilizer membership ambiguous for elements {np.flatnonzero(ambiguous).tolist()};"
            " perturb the vector")
    K = sorted(int(g) for g in np.flatnonzero(defect <= TOL.stabilizer_accept))
    if not _is_subgroup(irrep.group, K):
        raise InternalConsistencyError("phase stabilizer is not a subgroup")
    return K


def u_function(irrep: Irrep, v) -> np.ndarray:
    """``u(g) = n |<rho(g) v, v>|^2`` for every group element."""
    v = _unit_vector(irrep, v)
    overlaps = (irrep.matrices @ v) @ v.conj()
    return irrep.dimension * np.abs(overlaps) ** 2


def left_cosets(group: FiniteGroup, K) -> list[list[int]]:
    seen = set()
    cosets = []
    for g in range(group.order):
        if g in seen:
            continue
        coset = sorted({group.mul(g, k) for k in K})
        seen.update(coset)
        cosets.append(coset)
    return cosets


@dataclass(eq=False)
class OrbitPOVM:
    irrep: Irrep
    vector: np.ndarray
    stabilizer: list[int]
    coset_reps: list[int]
    u_values: np.ndarray

    @property
    def group(self) -> FiniteGroup:
        return self.irrep.group

    @property
    def omega_size(self) -> int:
        return len(self.coset_reps)


def orbit_povm(irrep: Irrep, v) -> OrbitPOVM:
    """Assemble the orbit POVM data and validate its invariants."""
    v = _unit_vector(irrep, v)
    G = irrep.group
    K = phase_stabilizer(irrep, v)
    if G.order % len(K):
        raise InternalConsistencyError("|K| does not divide |G|")
    reps = [c[0] for c in left_cosets(G, K)]
    if len(reps) * len(K) != G.order:
        raise InternalConsistencyError("coset count mismatch")
    u = u_function(irrep, v)
    n = irrep.dimension
    P = G.product
    for k1 in K:
        for k2 in K:
            if np.max(np.abs(u[P[P[k1], :][:, k2]] - u)) > TOL.bi_invariance:
                raise InternalConsistencyError("u is not bi-K-invariant")
    if np.max(np.abs(u[G.inverse] - u)) > TOL.bi_invariance:
        raise InternalConsistencyError("u(g^-1) != u(g)")
    if abs(u[G.identity] - n) > TOL.bi_invariance or np.any(u < -TOL.bi_invariance) \
            or np.any(u > n + TOL.bi_invariance):
        raise InternalConsistencyError("u out of range")
    return OrbitPOVM(irrep, v, K, reps, u)


def convolve(group: FiniteGroup, f, g) -> np.ndarray:
    """``(f * g)(s) = (1/|G|) sum_t f(t) g(t^-1 s)``."""
    f = np.asarray(f)
    g = np.asarray(g)
    table = g[group.product[group.inverse, :]]  # [t, s] -> g(t^-1 s)
    return f @ table / group.order


def double_cosets(group: FiniteGroup, K) -> list[list[int]]:
    seen = set()
    out = []
    for x in range(group.order):
        if x in seen:
            continue
        dc = sorted({group.mul(group.mul(a, x), b) for a in K for b in K})
        seen.update(dc)
        out.append(dc)
    return out


def gelfand_check(group: FiniteGroup, K) -> bool:
    """Whether the bi-K-invariant convolution algebra is commutative."""
    if not _is_subgroup(group, K):
        raise ValueError("K is not a subgroup")
    indicators = []
    for dc in double_cosets(group, K):
        ind = np.zeros(group.order)
        ind[dc] = 1.0
        indicators.append(ind)
    for a in range(len(indicators)):
        for b in range(a + 1, len(indicators)):
            ab = convolve(group, indicators[a], indicators[b])
            ba = convolve(group, indicators[b], indicators[a])
            if np.max(np.abs(ab - ba)) > TOL.convolution:
                return False
    return True


def berezin_matrix(povm: OrbitPOVM) -> np.ndarray:
    """Markov matrix ``M[s, t] = u(t^-1 s) |K| / |G|`` on the cosets."""
    G = povm.group
    K = povm.stabilizer
    u = povm.u_values
    reps = povm.coset_reps
    weight = len(K) / G.order
    size = len(reps)
    M = np.empty((size, size))
    for a, s in enumerate(reps):
        for b, t in enumerate(reps):
            lifts = [u[G.mul(G.inverse[G.mul(t, k2)], G.mul(s, k1))] for k1 in K for k2 in K]
            if max(lifts) - min(lifts) > TOL.bi_invariance_error:
                raise InternalConsistencyError("kernel depends on the choice of coset lift")
            M[a, b] = lifts[0] * weight
    if np.max(np.abs(M - M.T)) > TOL.markov_rows or np.max(np.abs(M.sum(axis=1) - 1.0)) > TOL.markov_rows:
        raise InternalConsistencyError("Berezin matrix is not symmetric stochastic")
    return M


def fourier_coefficient(u, irrep: Irrep) -> np.ndarray:
    """``(1/|G|) sum_x u(x) rho(x^-1)``."""
    u = np.asarray(u)
    G = irrep.group
    return np.einsum("x,xij->ij", u, irrep.matrices[G.inverse]) / G.order


def inverse_fourier(coefficients, irreps) -> np.ndarray:
    """Reassemble ``zeta(x) = sum_phi dim(phi) tr(zeta_hat(phi) phi(x))``."""
    total = 0
    for C, rho in zip(coefficients, irreps):
        total = total + rho.dimension * np.einsum("ij,xji->x", C, rho.matrices)
    return total


def character_inner_product(u, irrep: Irrep) -> complex:
    return complex(np.mean(np.asarray(u) * irrep.character.conj()))


def _pad(values, size, tol):
    values = [v for v in values if abs(v) > tol]
    if len(values) > size:
        raise InternalConsistencyError(
            f"{len(values)} nonzero predicted eigenvalues exceed |Omega| = {size}")
    values = values + [0.0] * (size - len(values))
    return np.array(sorted(values, key=lambda z: (-np.real(z), -np.imag(z))))


def _omega_size(group, K):
    return group.order // len(K)


def predicted_spectrum_gelfand(u, irreps, K) -> np.ndarray:
    """Character prediction ``<u, chi_phi>`` with multiplicity ``dim phi``.

    Only the nonzero part is kept and zeros are padded up to ``|G/K|``.
    """
    group = irreps[0].group
    if not gelfand_check(group, K):
        raise PreconditionError(f"({group.name}, K) is not a Gelfand pair")
    values = []
    for rho in irreps:
        values += [character_inner_product(u, rho).real] * rho.dimension
    return _pad(values, _omega_size(group, K), TOL.spectrum_match).real


def predicted_spectrum_general(u, irreps, K) -> np.ndarray:
    """Eigenvalues of every Fourier block ``u_hat(phi)``, each ``dim phi`` times.

    Valid for any subgroup. Nonzero part kept, zero padded to ``|G/K|``.
    """
    group = irreps[0].group
    values = []
    for rho in irreps:
        block = general_eigenvalues(fourier_coefficient(u, rho))
        values += list(block) * rho.dimension
    return _pad(values, _omega_size(group, K), TOL.spectrum_match)


def rank_one_check(u, irrep: Irrep) -> bool:
    """``u_hat(phi)`` has rank <= 1 and its nonzero eigenvalue is ``<u, chi_phi>``."""
    C = fourier_coefficient(u, irrep)
    norm = np.linalg.norm(C, 2)
    if norm <= TOL.rank_one:
        return True
    sv = np.linalg.svd(C, compute_uv=False)
    if np.any(sv[1:] > TOL.rank_one * norm):
        return False
    eig = general_eigenvalues(C)
    eig = eig[np.argsort(-np.abs(eig))]
    target = np.trace(C)
    if abs(target - character_inner_product(u, irrep)) > TOL.rank_one:
        return False
    return abs(eig[0] - target) <= TOL.rank_one and bool(np.all(np.abs(eig[1:]) <= TOL.rank_one))


def _complex_json(z):
    z = complex(z)
    return [z.real, z.imag]


def verification_report(group: FiniteGroup, irrep_index: int, v, irreps=None) -> dict:
    """Brute-force vs predicted spectrum for one (group, irrep, vector) case."""
    irreps = irreps if irreps is not None else irreps_of(group)
    rho = irreps[irrep_index]
    povm = orbit_povm(rho, v)
    computed = symmetric_eigenvalues(berezin_matrix(povm))
    gelfand = gelfand_check(group, povm.stabilizer)
    general = predicted_spectrum_general(povm.u_values, irreps, povm.stabilizer)
    report = {
        "group": group.name,
        "irrep_index": irrep_index,
        "irrep": rho.label,
        "vector": [_complex_json(z) for z in povm.vector],
        "stabilizer_order": len(povm.stabilizer),
        "omega_size": povm.omega_size,
        "gelfand": gelfand,
        "computed": computed.tolist(),
        "predicted_general": [_complex_json(z) for z in general],
    }
    deviation = float(np.max(np.abs(computed - general)))
    if gelfand:
        predicted = predicted_spectrum_gelfand(povm.u_values, irreps, povm.stabilizer)
        report["predicted_gelfand"] = predicted.tolist()
        report["rank_one"] = all(rank_one_check(povm.u_values, r) for r in irreps)
        deviation = max(deviation, float(np.max(np.abs(computed - predicted))))
    report["max_deviation"] = deviation
    return report
