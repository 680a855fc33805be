"""Term-condition commutator on finite semigroups.

Two independent routes are provided:

* ``commutator_bruteforce`` computes the least congruence ``delta`` with
  ``C(alpha, beta; delta)`` as a fixpoint over the three finite centralizing
  conditions C1, C2, C3 on the raw Cayley table.  It knows nothing about
  Rees coordinates.
* ``commutator_fast`` reads the answer off the sandwich matrix and the
  group commutator of the structure group.

Centralizing conditions are evaluated on *contexts*.  A context is a pair of
translations (x -> c x c', x -> d x d') with c beta d, c' beta d'; for each
context and each element ``a`` we record the two products.  The condition
fails when, inside one alpha-class, some ``a`` has delta-related products and
some ``b`` does not.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .core import FiniteSemigroup, Partition, congruence_from_pairs, is_completely_simple, is_congruence
from .errors import MethodUnavailable, Mismatch, NotACongruence, TooLarge
from .groups import (
    NormalSubgroup,
    congruence_of_normal,
    group_commutator,
    join_normal,
    normal_closure,
    normal_of_congruence,
)
from .rees import ReesMatrixSemigroup, rees_decompose
from .triples import LinkedTriple, congruence_of_triple, triple_of_congruence

DEFAULT_ORACLE_LIMIT = 64
HARD_ORACLE_LIMIT = 128
# C3 tables above this many cells are streamed rather than cached
MAX_CONTEXT_CELLS = 20_000_000
CHUNK_CELLS = 2_000_000


def oracle_limit() -> int:
    env = os.environ.get("REES_MAX_ORACLE")
    return int(env) if env else DEFAULT_ORACLE_LIMIT


def _guard(n: int, limit: int | None) -> None:
    limit = oracle_limit() if limit is None else limit
    if limit > HARD_ORACLE_LIMIT:
        raise TooLarge(f"oracle limit {limit} exceeds the hard cap {HARD_ORACLE_LIMIT}")
    if limit > DEFAULT_ORACLE_LIMIT:
        warnings.warn(f"oracle size guard raised to {limit}; expect long runtimes", stacklevel=3)
    if n > limit:
        raise TooLarge(f"oracle refused for order {n} > {limit}")


class CentralizerReport(NamedTuple):
    holds: bool
    violated_condition: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


# contexts ---------------------------------------------------------------------


@dataclass(frozen=True)
class _Contexts:
    """Context rows, either materialized or produced chunk by chunk.

    Each chunk is ``(Z, index)``: Z has shape (U, n) and holds pair codes
    x * n + y of the two products; index holds the original context number
    of each row.  Large C3 tables are regenerated on every pass instead of
    being kept in memory.
    """

    condition: str
    n: int
    pairs: np.ndarray  # beta pairs, shape (m, 2)
    table: np.ndarray
    stored: tuple | None = None

    def chunks(self):
        if self.stored is not None:
            yield self.stored
        else:
            yield from _c3_chunks(self.table, self.pairs)


def _pack(X: np.ndarray, Y: np.ndarray, index: np.ndarray, n: int):
    keep = ~np.all(X == Y, axis=1)  # c = d contexts can never fail
    Z, idx = (X[keep] * n + Y[keep]).astype(np.int32), index[keep]
    Z.setflags(write=False)
    return Z, idx


def _c3_chunks(t: np.ndarray, pairs: np.ndarray):
    """C3 rows c1 a c2 vs d1 a d2 with context index q1 * m + q2."""
    n, m = t.shape[0], len(pairs)
    c, d = pairs[:, 0], pairs[:, 1]
    left_c, left_d = t[c], t[d]
    step = max(1, CHUNK_CELLS // max(1, m * n))
    for lo in range(0, m, step):
        hi = min(m, lo + step)
        Xc = t[left_c[lo:hi, None, :], c[None, :, None]].reshape(-1, n)
        Yc = t[left_d[lo:hi, None, :], d[None, :, None]].reshape(-1, n)
        yield _pack(Xc, Yc, np.arange(lo * m, hi * m), n)


@lru_cache(maxsize=48)
def _contexts(S: FiniteSemigroup, beta: Partition, condition: str) -> _Contexts:
    t = S.table
    n = S.order
    pairs = np.array(beta.pairs(), dtype=np.int64).reshape(-1, 2)
    c, d = pairs[:, 0], pairs[:, 1]
    m = len(pairs)
    if condition == "C1":  # a c vs a d
        stored = _pack(t[:, c].T, t[:, d].T, np.arange(m), n)
    elif condition == "C2":  # c a vs d a
        stored = _pack(t[c], t[d], np.arange(m), n)
    elif condition == "C3":
        if m * m * n > MAX_CONTEXT_CELLS:
            stored = None
        else:
            parts = list(_c3_chunks(t, pairs))
            stored = (np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))
    else:
        raise ValueError(condition)
    return _Contexts(condition, n, pairs, t, stored)


def _decode_context(ctx: _Contexts, q: int) -> tuple:
    if ctx.condition == "C3":
        m = len(ctx.pairs)
        (c1, d1), (c2, d2) = ctx.pairs[q // m], ctx.pairs[q % m]
        return int(c1), int(d1), int(c2), int(d2)
    c, d = ctx.pairs[q]
    return int(c), int(d)


class _Classes(NamedTuple):
    """Columns grouped into classes of size >= 2 (singletons never fail)."""

    columns: np.ndarray  # element ids, grouped by class
    starts: np.ndarray  # offsets of each class within ``columns``

    @classmethod
    def of(cls, elements: Sequence[int], labels: Sequence[int]) -> "_Classes":
        groups: dict[int, list[int]] = {}
        for x, lab in zip(elements, labels):
            groups.setdefault(lab, []).append(x)
        cols, starts = [], []
        for members in groups.values():
            if len(members) > 1:
                starts.append(len(cols))
                cols.extend(sorted(members))
        return cls(np.array(cols, dtype=np.int64), np.array(starts, dtype=np.int64))

    def __len__(self):
        return len(self.starts)


def _same_block(delta: Partition) -> np.ndarray:
    blk = delta.array
    return (blk[:, None] == blk[None, :]).ravel()


def _violations(Z: np.ndarray, classes: _Classes, same: np.ndarray):
    """Boolean (U, k) array: context u splits class k, plus the eq table."""
    eq = same[Z[:, classes.columns]]
    some = np.logical_or.reduceat(eq, classes.starts, axis=1)
    every = np.logical_and.reduceat(eq, classes.starts, axis=1)
    return some & ~every, eq


def _first_witness(index: np.ndarray, classes: _Classes, eq: np.ndarray):
    """Least (a, b, context index) violation within one chunk."""
    cols = classes.columns.tolist()
    bounds = list(classes.starts.tolist()) + [len(cols)]
    slot = {}
    for k in range(len(classes)):
        for pos in range(bounds[k], bounds[k + 1]):
            slot[cols[pos]] = (k, pos)
    for a in sorted(slot):
        k, pa = slot[a]
        for pb in range(bounds[k], bounds[k + 1]):
            b = cols[pb]
            if b == a:
                continue
            mask = eq[:, pa] & ~eq[:, pb]
            if mask.any():
                return a, b, int(index[mask].min())
    raise AssertionError("violation reported but no witness found")


def _scan(ctx: _Contexts, classes: _Classes, delta: Partition, label: str | None = None) -> CentralizerReport:
    if len(classes) == 0:
        return CentralizerReport(True)
    same = _same_block(delta)
    best = None
    for Z, index in ctx.chunks():
        if len(Z) == 0:
            continue
        viol, eq = _violations(Z, classes, same)
        if viol.any():
            found = _first_witness(index, classes, eq)
            best = found if best is None else min(best, found)
    if best is None:
        return CentralizerReport(True)
    a, b, q = best
    return CentralizerReport(False, label or ctx.condition, (a, b) + _decode_context(ctx, q))


def _require_congruences(S: FiniteSemigroup, **congs: Partition) -> None:
    for name, c in congs.items():
        if not is_congruence(S, c):
            raise NotACongruence(f"{name} is not a congruence")


def centralizes_general(
    S: FiniteSemigroup, alpha: Partition, beta: Partition, delta: Partition,
    *, limit: int | None = None, check: bool = True,
) -> CentralizerReport:
    """C(alpha, beta; delta) on an arbitrary finite semigroup via C1, C2, C3."""
    _guard(S.order, limit)
    if check:
        _require_congruences(S, alpha=alpha, beta=beta, delta=delta)
    classes = _Classes.of(range(S.order), alpha.block_id)
    for cond in ("C1", "C2", "C3"):
        report = _scan(_contexts(S, beta, cond), classes, delta)
        if not report:
            return report
    return CentralizerReport(True)


def _special_classes(RS: ReesMatrixSemigroup, rho: Partition):
    """Column classes for C3.1 (i,e,0), C3.2 (0,f,0) and C3.3 (0,e,lam)."""
    T = triple_of_congruence(RS, rho, check=False)
    e, enc = RS.group.identity, RS.encode
    return (
        ("C3.1", _Classes.of([enc(i, e, 0) for i in range(RS.I_size)], T.rho_I.block_id)),
        ("C3.2", _Classes.of([enc(0, f, 0) for f in range(RS.group.order)], T.rho_G.block_id)),
        ("C3.3", _Classes.of([enc(0, e, lam) for lam in range(RS.Lambda_size)], T.rho_Lambda.block_id)),
    )


def centralizes_cs(
    RS: ReesMatrixSemigroup, rho: Partition, sigma: Partition, delta: Partition,
    mode: str = "C3", *, limit: int | None = None, check: bool = True,
) -> CentralizerReport:
    """C(rho, sigma; delta) on a Rees semigroup using C3 alone or C3.1-C3.3."""
    S = RS.semigroup
    _guard(S.order, limit)
    if check:
        _require_congruences(S, rho=rho, sigma=sigma, delta=delta)
    ctx = _contexts(S, sigma, "C3")
    if mode == "C3":
        return _scan(ctx, _Classes.of(range(S.order), rho.block_id), delta)
    if mode in ("C3.1-3.3", "split"):
        for label, classes in _special_classes(RS, rho):
            report = _scan(ctx, classes, delta, label)
            if not report:
                return report
        return CentralizerReport(True)
    raise ValueError(f"unknown mode {mode!r}")


def commutator_bruteforce(
    S: FiniteSemigroup, alpha: Partition, beta: Partition,
    *, limit: int | None = None, check: bool = True,
) -> Partition:
    """Least delta with C(alpha, beta; delta), by fixpoint iteration from 0_S.

    Each sweep collects every conclusion pair whose premise already holds
    modulo the current delta, then closes to a congruence.  Every collected
    pair lies in any centralizing congruence above the current one, so the
    iteration never overshoots the least solution.
    """
    _guard(S.order, limit)
    if check:
        _require_congruences(S, alpha=alpha, beta=beta)
    classes = _Classes.of(range(S.order), alpha.block_id)
    contexts = [_contexts(S, beta, cond) for cond in ("C1", "C2", "C3")]
    n = S.order
    delta = Partition.zero(n)
    if len(classes) == 0:
        return delta
    cols = classes.columns
    bounds = np.append(classes.starts, len(cols))
    while True:
        same = _same_block(delta)
        forced = []
        for ctx in contexts:
            for Z, _ in ctx.chunks():
                if len(Z) == 0:
                    continue
                viol, eq = _violations(Z, classes, same)
                if not viol.any():
                    continue
                rows, ks = np.nonzero(viol)
                for k in np.unique(ks):
                    sel = rows[ks == k]
                    span = slice(bounds[k], bounds[k + 1])
                    codes = Z[sel][:, cols[span]]
                    forced.append(np.unique(codes[~eq[sel, span]]))
        if not forced:
            return delta
        codes = np.unique(np.concatenate(forced))
        xs, ys = np.divmod(codes, n)
        delta = congruence_from_pairs(
            S, delta.linking_pairs() + list(zip(xs.tolist(), ys.tolist())), limit=None
        )


# fast path ------------------------------------------------------------------------


def theta_normal(RS: ReesMatrixSemigroup, T_rho: LinkedTriple, T_sigma: LinkedTriple) -> NormalSubgroup:
    """Normal subgroup of the sandwich-matrix congruence Theta_{rho,sigma}."""
    G, P = RS.group, RS.P
    inv, mul = G.inv, G.mul

    def ratio(mu, lam, i):  # p_{mu i} p_{lam i}^-1
        return mul(P[mu][i], inv(P[lam][i]))

    seeds = set()
    for idx, lam_rel in ((T_rho.rho_I, T_sigma.rho_Lambda), (T_sigma.rho_I, T_rho.rho_Lambda)):
        for i, j in idx.pairs():
            for lam, mu in lam_rel.pairs():
                x, y = ratio(mu, lam, i), ratio(mu, lam, j)
                seeds.add(mul(x, inv(y)))
    return normal_closure(G, seeds)


def theta_congruence(RS: ReesMatrixSemigroup, rho: Partition, sigma: Partition) -> Partition:
    T_rho = triple_of_congruence(RS, rho)
    T_sigma = triple_of_congruence(RS, sigma)
    return congruence_of_normal(RS.group, theta_normal(RS, T_rho, T_sigma))


def group_part_of_commutator(RS: ReesMatrixSemigroup, T_rho: LinkedTriple, T_sigma: LinkedTriple) -> NormalSubgroup:
    """[rho_G, sigma_G] joined with Theta_{rho,sigma}, as a normal subgroup."""
    G = RS.group
    comm = group_commutator(G, normal_of_congruence(G, T_rho.rho_G), normal_of_congruence(G, T_sigma.rho_G))
    return join_normal(G, comm, theta_normal(RS, T_rho, T_sigma))


def commutator_triple(RS: ReesMatrixSemigroup, rho: Partition, sigma: Partition, *, check: bool = True) -> LinkedTriple:
    T_rho = triple_of_congruence(RS, rho, check=check)
    T_sigma = triple_of_congruence(RS, sigma, check=check)
    N = group_part_of_commutator(RS, T_rho, T_sigma)
    return LinkedTriple(
        Partition.zero(RS.I_size), congruence_of_normal(RS.group, N), Partition.zero(RS.Lambda_size)
    )


def commutator_fast(RS: ReesMatrixSemigroup, rho: Partition, sigma: Partition, *, check: bool = True) -> Partition:
    return congruence_of_triple(RS, commutator_triple(RS, rho, sigma, check=check))


# dispatcher ---------------------------------------------------------------------


@lru_cache(maxsize=32)
def _decomposition(S: FiniteSemigroup):
    return rees_decompose(S)


def _transport(c: Partition, iso: Sequence[int]) -> Partition:
    labels = [0] * len(iso)
    for x, y in enumerate(iso):
        labels[y] = c.block_id[x]
    return Partition(labels)


def _pull_back(c: Partition, iso: Sequence[int]) -> Partition:
    return Partition(c.block_id[y] for y in iso)


def _fast_any(X, alpha: Partition, beta: Partition) -> Partition:
    if isinstance(X, ReesMatrixSemigroup):
        return commutator_fast(X, alpha, beta)
    if not is_completely_simple(X):
        raise MethodUnavailable("fast method needs a completely simple semigroup")
    RS, iso = _decomposition(X)
    return _pull_back(commutator_fast(RS, _transport(alpha, iso), _transport(beta, iso)), iso)


def commutator(X, alpha: Partition, beta: Partition, method: str = "auto", *, limit: int | None = None) -> Partition:
    """[alpha, beta] for a FiniteSemigroup or ReesMatrixSemigroup ``X``.

    ``method`` is one of auto, fast, oracle, both.  ``both`` raises
    :class:`Mismatch` when the two routes disagree.
    """
    S = X.semigroup if isinstance(X, ReesMatrixSemigroup) else X
    if method == "fast":
        return _fast_any(X, alpha, beta)
    if method == "oracle":
        return commutator_bruteforce(S, alpha, beta, limit=limit)
    if method == "auto":
        try:
            return _fast_any(X, alpha, beta)
        except MethodUnavailable:
            return commutator_bruteforce(S, alpha, beta, limit=limit)
    if method == "both":
        fast = _fast_any(X, alpha, beta)
        slow = commutator_bruteforce(S, alpha, beta, limit=limit)
        if fast != slow:
            raise Mismatch("fast and oracle commutators differ", {"fast": fast, "oracle": slow})
        return fast
    raise MethodUnavailable(f"unknown method {method!r}")
