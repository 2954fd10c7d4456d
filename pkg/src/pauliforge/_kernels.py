"""Hot loops of the Clifford-database search.

Each candidate circuit is a random walk of ``K`` steps on a small local
graph: two random one-qubit Cliffords on the endpoints of a random edge,
then a CNOT in a random direction.  The kernels replay a batch of walks on
a sign-free tableau (signs never matter for the support and presence
conditions checked here) and report, per walk, the number of CNOTs after
which the task condition first holds (``-1`` if never).

Two interchangeable backends produce identical results:

* numba ``@njit`` loops (default when numba imports),
* a pure-numpy path vectorized across walks.

Set ``PAULIFORGE_DISABLE_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "KIND_COMPRESS",
    "KIND_IMPLEMENT",
    "KIND_SIMULTANEOUS",
    "HAVE_NUMBA",
    "backend",
    "first_success",
    "first_success_numba",
    "first_success_numpy",
]

KIND_COMPRESS = 0
KIND_IMPLEMENT = 1
KIND_SIMULTANEOUS = 2

try:  # pragma: no cover - exercised implicitly
    if os.environ.get("PAULIFORGE_DISABLE_NUMBA", "0") not in ("", "0"):
        raise ImportError("numba disabled by PAULIFORGE_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


@njit(cache=True)
def _parity(v):
    c = 0
    while v:
        v &= v - 1
        c ^= 1
    return c


@njit(cache=True)
def _check(kind, n, zx, zz, xx, xz, px, pz, anti, removed, done):
    m = px.shape[0]
    if kind == KIND_COMPRESS:
        for j in range(m):
            if _parity((px[j] & zz[removed]) ^ (pz[j] & zx[removed])):
                return False
            if _parity((px[j] & xz[removed]) ^ (pz[j] & xx[removed])):
                return False
        return True
    all_present = True
    for j in range(m):
        if done[j]:
            continue
        present = False
        for q in range(n):
            if px[j] == zx[q] and pz[j] == zz[q]:
                present = True
            elif px[j] == xx[q] and pz[j] == xz[q]:
                present = True
            elif px[j] == (zx[q] ^ xx[q]) and pz[j] == (zz[q] ^ xz[q]):
                present = True
            if present:
                break
        if not present:
            all_present = False
            continue
        if kind == KIND_IMPLEMENT:
            ok = True
            for i in range(j):
                if not done[i] and anti[i, j]:
                    ok = False
                    break
            if ok:
                done[j] = True
    if kind == KIND_SIMULTANEOUS:
        return all_present
    for j in range(m):
        if not done[j]:
            return False
    return True


@njit(cache=True)
def _walks(kind, n, eu, ev, px, pz, anti, removed, cliff, edge_idx, c1, c2, direc):
    n_walks, k_steps = edge_idx.shape
    m = px.shape[0]
    out = np.full(n_walks, -1, dtype=np.int64)
    zx = np.zeros(n, dtype=np.int64)
    zz = np.zeros(n, dtype=np.int64)
    xx = np.zeros(n, dtype=np.int64)
    xz = np.zeros(n, dtype=np.int64)
    done = np.zeros(m, dtype=np.bool_)
    for a in range(n_walks):
        for q in range(n):
            zx[q] = 0
            zz[q] = 1 << q
            xx[q] = 1 << q
            xz[q] = 0
        done[:] = False
        if _check(kind, n, zx, zz, xx, xz, px, pz, anti, removed, done):
            out[a] = 0
            continue
        for k in range(k_steps):
            e = edge_idx[a, k]
            u = eu[e]
            v = ev[e]
            for side in range(2):
                q = u if side == 0 else v
                c = c1[a, k] if side == 0 else c2[a, k]
                a00 = cliff[c, 0]
                a01 = cliff[c, 1]
                a10 = cliff[c, 2]
                a11 = cliff[c, 3]
                ozx, ozz, oxx, oxz = zx[q], zz[q], xx[q], xz[q]
                zx[q] = (ozx if a00 else 0) ^ (oxx if a01 else 0)
                zz[q] = (ozz if a00 else 0) ^ (oxz if a01 else 0)
                xx[q] = (ozx if a10 else 0) ^ (oxx if a11 else 0)
                xz[q] = (ozz if a10 else 0) ^ (oxz if a11 else 0)
            if direc[a, k]:
                ctl, tgt = v, u
            else:
                ctl, tgt = u, v
            zx[tgt] ^= zx[ctl]
            zz[tgt] ^= zz[ctl]
            xx[ctl] ^= xx[tgt]
            xz[ctl] ^= xz[tgt]
            if _check(kind, n, zx, zz, xx, xz, px, pz, anti, removed, done):
                out[a] = k + 1
                break
    return out


def first_success_numba(kind, n, eu, ev, px, pz, anti, removed, cliff, edge_idx, c1, c2, direc):
    if not HAVE_NUMBA:
        raise RuntimeError("numba backend unavailable")
    return _walks(kind, n, eu, ev, px, pz, anti, removed, cliff, edge_idx, c1, c2, direc)


def _anti(ax, az, bx, bz):
    v = (ax & bz) ^ (az & bx)
    # parity of up to 62 bits
    v ^= v >> 32
    v ^= v >> 16
    v ^= v >> 8
    v ^= v >> 4
    v ^= v >> 2
    v ^= v >> 1
    return v & 1


def _check_np(kind, n, zx, zz, xx, xz, px, pz, anti, removed, done):
    m = px.shape[0]
    if kind == KIND_COMPRESS:
        ok = np.ones(zx.shape[0], dtype=bool)
        for j in range(m):
            ok &= _anti(px[j], pz[j], zx[:, removed], zz[:, removed]) == 0
            ok &= _anti(px[j], pz[j], xx[:, removed], xz[:, removed]) == 0
        return ok
    yx, yz = zx ^ xx, zz ^ xz
    present = np.empty((zx.shape[0], m), dtype=bool)
    for j in range(m):
        present[:, j] = (
            ((zx == px[j]) & (zz == pz[j])) | ((xx == px[j]) & (xz == pz[j])) | ((yx == px[j]) & (yz == pz[j]))
        ).any(axis=1)
    if kind == KIND_SIMULTANEOUS:
        return present.all(axis=1)
    for j in range(m):
        ok = present[:, j] & ~done[:, j]
        for i in range(j):
            if anti[i, j]:
                ok &= done[:, i]
        done[:, j] |= ok
    return done.all(axis=1)


def first_success_numpy(kind, n, eu, ev, px, pz, anti, removed, cliff, edge_idx, c1, c2, direc):
    n_walks, k_steps = edge_idx.shape
    m = px.shape[0]
    rows = np.arange(n_walks)
    bits = 1 << np.arange(n, dtype=np.int64)
    zx = np.zeros((n_walks, n), dtype=np.int64)
    zz = np.tile(bits, (n_walks, 1))
    xx = np.tile(bits, (n_walks, 1))
    xz = np.zeros((n_walks, n), dtype=np.int64)
    done = np.zeros((n_walks, m), dtype=bool)
    out = np.full(n_walks, -1, dtype=np.int64)
    ok = _check_np(kind, n, zx, zz, xx, xz, px, pz, anti, removed, done)
    out[ok] = 0
    for k in range(k_steps):
        e = edge_idx[:, k]
        for q, c in ((eu[e], c1[:, k]), (ev[e], c2[:, k])):
            a = cliff[c]
            ozx, ozz, oxx, oxz = zx[rows, q], zz[rows, q], xx[rows, q], xz[rows, q]
            zx[rows, q] = (ozx * a[:, 0]) ^ (oxx * a[:, 1])
            zz[rows, q] = (ozz * a[:, 0]) ^ (oxz * a[:, 1])
            xx[rows, q] = (ozx * a[:, 2]) ^ (oxx * a[:, 3])
            xz[rows, q] = (ozz * a[:, 2]) ^ (oxz * a[:, 3])
        flip = direc[:, k].astype(bool)
        ctl = np.where(flip, ev[e], eu[e])
        tgt = np.where(flip, eu[e], ev[e])
        zx[rows, tgt] ^= zx[rows, ctl]
        zz[rows, tgt] ^= zz[rows, ctl]
        xx[rows, ctl] ^= xx[rows, tgt]
        xz[rows, ctl] ^= xz[rows, tgt]
        ok = _check_np(kind, n, zx, zz, xx, xz, px, pz, anti, removed, done)
        newly = ok & (out < 0)
        out[newly] = k + 1
    return out


def first_success(kind, n, eu, ev, px, pz, anti, removed, cliff, edge_idx, c1, c2, direc, use_numba=None):
    """Dispatch to the selected backend; all integer inputs are int64 arrays."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    fn = first_success_numba if use_numba else first_success_numpy
    return fn(kind, n, eu, ev, px, pz, anti, removed, cliff, edge_idx, c1, c2, direc)
