"""Kernels without compiled code (numpy-vectorised where it matters).

Same contracts as ``_ckernels``; used when the extension is not built or
``MLAT_PURE_PYTHON=1``.  Tables are n x n integer arrays; subsets are
Python ints used as bitsets.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def _rows(table):
    if isinstance(table, np.ndarray):
        return table.tolist()
    return table


def _flags(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(int(mask).to_bytes((n + 7) // 8 + 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def _mask(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def _close(t: np.ndarray, flags: np.ndarray, members: np.ndarray, new: np.ndarray) -> None:
    # frontier rounds: new x all and all x new
    while new.size:
        members = np.concatenate((members, new))
        prods = np.concatenate((t[np.ix_(new, members)].ravel(), t[np.ix_(members, new)].ravel()))
        fresh = np.unique(prods[~flags[prods]])
        flags[fresh] = True
        new = fresh


def closure(table, seeds, base: int = 0) -> int:
    """Smallest product-closed superset of ``seeds`` and ``base``.

    ``base`` must already be product-closed; only pairs involving a new
    element are multiplied.
    """
    t = np.asarray(table)
    flags = _flags(base, len(t))
    members = np.flatnonzero(flags)
    new = np.unique(np.asarray(list(seeds), dtype=np.intp))
    new = new[~flags[new]]
    flags[new] = True
    _close(t, flags, members, new)
    return _mask(flags)


def extensions(table, mask: int) -> list[int]:
    """Distinct closures of ``H + {g}`` over g outside the closed set ``H``.

    Returned in order of first discovery (increasing g).
    """
    t = np.asarray(table)
    base = _flags(mask, len(t))
    members = np.flatnonzero(base)
    found: list[int] = []
    seen: set[int] = set()
    for g in np.flatnonzero(~base):
        flags = base.copy()
        flags[g] = True
        _close(t, flags, members, np.array([g]))
        ext = _mask(flags)
        if ext not in seen:
            seen.add(ext)
            found.append(ext)
    return found


def moufang_violation(table):
    """First triple with ((xy)x)z != x(y(xz)), or None."""
    t = np.asarray(table)
    for x in range(len(t)):
        xyx = t[t[x], x]
        left = t[xyx]  # [y, z] -> ((xy)x)z
        right = t[x][t[:, t[x]]]  # [y, z] -> x(y(xz))
        bad = np.argwhere(left != right)
        if bad.size:
            y, z = bad[0]
            return (x, int(y), int(z))
    return None


def associative_violation(table):
    """First triple with (xy)z != x(yz), or None."""
    t = np.asarray(table)
    for x in range(len(t)):
        left = t[t[x]]  # [y, z] -> (xy)z
        right = t[x][t]  # [y, z] -> x(yz)
        bad = np.argwhere(left != right)
        if bad.size:
            y, z = bad[0]
            return (x, int(y), int(z))
    return None


def extend_hom(src, dst, steps, domain, image) -> bool:
    """Extend a partial map ``src -> dst`` along ``steps`` and test it on ``domain``.

    ``steps`` is an (m, 3) array of ``(k, l, r)`` with ``k = l * r`` in
    ``src``; the map is forced to ``image[k] = image[l] * image[r]`` in
    ``dst``.  ``image`` holds the generator images on entry (-1 elsewhere)
    and the extended map on return.  True iff the result is injective on
    ``domain`` and multiplicative on all pairs of it.
    """
    t = _rows(dst)
    for k, l, r in _rows(steps):
        il, ir = image[l], image[r]
        if il < 0 or ir < 0:
            return False
        image[k] = t[il][ir]
    s = np.asarray(src)
    d = np.asarray(domain, dtype=np.intp)
    img = np.asarray(image, dtype=np.intp)
    fd = img[d]
    if (fd < 0).any() or len(np.unique(fd)) != len(fd):
        return False
    prod = s[np.ix_(d, d)]
    fprod = img[prod]
    return bool((fprod >= 0).all() and (fprod == np.asarray(dst)[np.ix_(fd, fd)]).all())


def image_mask(perm, mask: int) -> int:
    perm = np.asarray(perm)
    flags = np.zeros(len(perm), dtype=bool)
    flags[perm[_flags(mask, len(perm))]] = True
    return _mask(flags)
