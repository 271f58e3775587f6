"""Pure-Python reference kernels.

Everything works on raw exponent integers and digit tuples. Tuples are
ordered tau_1..tau_r; niveau-1 masks use bit ``i % r`` for tau_i and
niveau-2 masks use bit ``i`` for sigma_i.
"""


class KernelError(ValueError):
    pass


def digits(p, n, exp):
    """Base-p digits of ``exp`` over n places, most significant first."""
    out = [0] * n
    for k in range(n - 1, -1, -1):
        exp, out[k] = divmod(exp, p)
    return tuple(out)


def encode(p, a):
    """Exponent sum_i a_i p^(n-i); no reduction."""
    acc = 0
    for x in a:
        acc = acc * p + x
    return acc


def _bit(mask, i, r):
    return (mask >> (i % r)) & 1


def reducible_witnesses(p, r, a_exp, b, psi1, psi2):
    e = p ** r - 1
    full = (1 << r) - 1
    out = []
    for J in range(full + 1):
        s1 = a_exp
        s2 = a_exp
        for i in range(1, r + 1):
            t = b[i - 1] * p ** (r - i)
            if _bit(J, i, r):
                s1 += t
            else:
                s2 += t
        if (s1 - psi1) % e == 0 and (s2 - psi2) % e == 0:
            out.append(J)
    return out


def full_subsets(r):
    """Full subsets of Z/2r as ascending niveau-2 masks."""
    out = []
    for s in range(1 << r):
        m = 0
        for t in range(r):
            m |= 1 << (t + r * ((s >> t) & 1))
        out.append(m)
    out.sort()
    return out


def irreducible_witnesses(p, r, a_exp, b, theta):
    e2 = p ** (2 * r) - 1
    n = 2 * r
    a2 = a_exp * (1 + p ** r)
    theta %= e2
    conj = theta * p ** r % e2
    out = []
    for J in full_subsets(r):
        s1 = a2
        s2 = a2
        for i in range(n):
            t = b[(i - 1) % r] * p ** ((n - i) % n)
            if (J >> i) & 1:
                s1 += t
            else:
                s2 += t
        s1 %= e2
        s2 %= e2
        if (s1 == theta and s2 == conj) or (s1 == conj and s2 == theta):
            out.append(J)
    return out


def _canon(p, r, a_exp):
    e = p ** r - 1
    return digits(p, r, a_exp % e)


def principal_factors(p, r, chi1, chi2):
    """JH factors of the principal series type (chi1, chi2).

    Returns ``(K, a, b)`` triples in K order; factors with some b_i = 0
    are zero-dimensional and dropped.
    """
    e = p ** r - 1
    if (chi1 - chi2) % e == 0:
        raise KernelError("scalar type")
    c = digits(p, r, (chi2 - chi1) % e)
    out = []
    for K in range(1 << r):
        a_exp = chi1
        bk = []
        for i in range(1, r + 1):
            ci = c[i - 1] + _bit(K, i + 1, r)
            if _bit(K, i, r):
                bk.append(ci)
            else:
                a_exp += ci * p ** (r - i)
                bk.append(p - ci)
        if any(x < 0 or x > p for x in bk):
            raise KernelError("factor b out of range")
        if 0 in bk:
            continue
        out.append((K, _canon(p, r, a_exp), tuple(bk)))
    return out


def cuspidal_factors(p, r, c, psi):
    """JH factors of the cuspidal type built from (c, psi)."""
    out = []
    for K in range(1 << r):
        a_exp = psi
        bk = []
        for i in range(1, r + 1):
            ci = c[i - 1]
            nxt = _bit(K, i + 1, r)
            if i == r:
                if _bit(K, 0, r):
                    ai, bi = nxt, ci + 1 - nxt
                else:
                    ai, bi = ci + 1, p - ci + nxt - 1
            elif _bit(K, i, r):
                ai, bi = 0, ci + nxt
            else:
                ai, bi = ci + nxt, p - ci - nxt
            a_exp += ai * p ** (r - i)
            bk.append(bi)
        if any(x < 0 or x > p for x in bk):
            raise KernelError("factor b out of range")
        if 0 in bk:
            continue
        out.append((K, _canon(p, r, a_exp), tuple(bk)))
    return out


def reducible_type(p, r, a_exp, b, J):
    """(c, chi1, chi2) for the principal series type of sigma_{a,b} via J."""
    e = p ** r - 1
    c = []
    chi = a_exp
    for i in range(1, r + 1):
        nxt = _bit(J, i + 1, r)
        if _bit(J, i, r):
            c.append(b[i - 1] - nxt)
        else:
            c.append(p - b[i - 1] - nxt)
            chi += (b[i - 1] - p) * p ** (r - i)
    chi %= e
    return tuple(c), chi, (chi + encode(p, c)) % e


def cuspidal_type(p, r, a_exp, b, J):
    """(K, c, psi, theta) for the cuspidal type of sigma_{a,b} via full J."""
    e = p ** r - 1
    e2 = p ** (2 * r) - 1
    K = 0
    for i in range(1, r + 1):
        if (J >> i) & 1:
            K |= 1 << (i % r)
    c = []
    for i in range(1, r + 1):
        bi = b[i - 1]
        nxt = _bit(K, i + 1, r)
        if i == r:
            if _bit(K, 0, r):
                c.append(bi + nxt - 1)
            else:
                c.append(p - bi + nxt - 1)
        elif _bit(K, i, r):
            c.append(bi - nxt)
        else:
            c.append(p - bi - nxt)
    psi = a_exp - _bit(K, 1, r)
    for i in range(1, r + 1):
        if not _bit(K, i, r):
            psi += (b[i - 1] - p) * p ** (r - i)
    psi %= e
    theta = psi * (1 + p ** r) + p ** r
    for i in range(1, r + 1):
        theta += c[i - 1] * p ** (2 * r - i)
    return K, tuple(c), psi, theta % e2


def cuspidal_simple(p, r, a_exp, b, J):
    """Both characters of the direct form of the cuspidal type."""
    e2 = p ** (2 * r) - 1
    n = 2 * r
    s1 = s2 = a_exp * (1 + p ** r)
    for i in range(n):
        t = (b[(i - 1) % r] - p) * p ** ((n - i) % n)
        if (J >> i) & 1:
            s1 += t
        else:
            s2 += t
    return s1 % e2, s2 % e2


def sweep_tau_identity(p, r, bs):
    """Compare both cuspidal constructions over all a, the given b, all full J.

    Returns ``(cases, mismatches)`` with mismatches as ``(a_exp, b, J)``.
    """
    e = p ** r - 1
    e2 = p ** (2 * r) - 1
    fulls = full_subsets(r)
    cases = 0
    bad = []
    for b in bs:
        for a_exp in range(e):
            for J in fulls:
                cases += 1
                theta = cuspidal_type(p, r, a_exp, b, J)[3]
                s1, s2 = cuspidal_simple(p, r, a_exp, b, J)
                conj = theta * p ** r % e2
                if not ((s1 == theta and s2 == conj) or (s1 == conj and s2 == theta)):
                    bad.append((a_exp, tuple(b), J))
    return cases, bad


def _weak_class(p, bk):
    if all(2 <= x <= p - 2 for x in bk):
        return 0
    if all(1 <= x <= p - 1 for x in bk):
        return 1
    return 2


def sweep_weak_regularity(p, r, bs):
    """JH factors of every type of every regular weight with b in ``bs``.

    Returns ``(cases, violations)``. A violation is
    ``(kind, a_exp, b, J, reason)`` where reason is ``"not-weakly-regular"``
    or ``"dimension"``.
    """
    e = p ** r - 1
    q = p ** r
    fulls = full_subsets(r)
    cases = 0
    bad = []
    for b in bs:
        b = tuple(b)
        for a_exp in range(e):
            for J in range(1 << r):
                cases += 1
                _, chi1, chi2 = reducible_type(p, r, a_exp, b, J)
                fs = principal_factors(p, r, chi1, chi2)
                dim = 0
                for _, _, bk in fs:
                    d = 1
                    for x in bk:
                        d *= x
                    dim += d
                    if _weak_class(p, bk) == 2:
                        bad.append(("ps", a_exp, b, J, "not-weakly-regular"))
                if dim != q + 1:
                    bad.append(("ps", a_exp, b, J, "dimension"))
            for J in fulls:
                cases += 1
                _, c, psi, _ = cuspidal_type(p, r, a_exp, b, J)
                fs = cuspidal_factors(p, r, c, psi)
                dim = 0
                for _, _, bk in fs:
                    d = 1
                    for x in bk:
                        d *= x
                    dim += d
                    if _weak_class(p, bk) == 2:
                        bad.append(("cusp", a_exp, b, J, "not-weakly-regular"))
                if dim != q - 1:
                    bad.append(("cusp", a_exp, b, J, "dimension"))
    return cases, bad
