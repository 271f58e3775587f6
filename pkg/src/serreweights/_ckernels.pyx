# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the routines in ``_pykernels``.

Callers must keep p**(3r) below 2**62; ``kernels`` routes larger
contexts to the pure-Python versions.
"""

from serreweights._pykernels import KernelError, digits, encode, full_subsets

DEF MAXR = 16

ctypedef long long i64


cdef inline int bit(unsigned long long mask, int i, int r) nogil:
    return (mask >> (i % r)) & 1


cdef inline i64 mod(i64 x, i64 m) nogil:
    x %= m
    if x < 0:
        x += m
    return x


cdef void powers(i64 p, int n, i64* out) nogil:
    # out[k] = p**k
    cdef int k
    out[0] = 1
    for k in range(1, n + 1):
        out[k] = out[k - 1] * p


cdef void c_digits(i64 p, int r, i64 x, int* out) nogil:
    cdef int k
    for k in range(r - 1, -1, -1):
        out[k] = x % p
        x //= p


cdef i64 c_reducible_type(i64 p, int r, i64 a_exp, int* b, unsigned long long J,
                          i64* pw, int* c) nogil:
    # fills c, returns chi1 (chi2 = chi1 + enc(c))
    cdef i64 e = pw[r] - 1
    cdef i64 chi = a_exp
    cdef int i, nxt
    for i in range(1, r + 1):
        nxt = bit(J, i + 1, r)
        if bit(J, i, r):
            c[i - 1] = b[i - 1] - nxt
        else:
            c[i - 1] = p - b[i - 1] - nxt
            chi += (b[i - 1] - p) * pw[r - i]
    return mod(chi, e)


cdef i64 c_enc(int* v, int r, i64* pw) nogil:
    cdef i64 s = 0
    cdef int i
    for i in range(1, r + 1):
        s += v[i - 1] * pw[r - i]
    return s


cdef i64 c_cuspidal_type(i64 p, int r, i64 a_exp, int* b, unsigned long long J,
                         i64* pw, int* c, unsigned long long* Kout, i64* psi_out) nogil:
    # fills c, K and psi; returns theta
    cdef i64 e = pw[r] - 1
    cdef i64 e2 = pw[2 * r] - 1
    cdef unsigned long long K = 0
    cdef int i, bi, nxt
    cdef i64 psi, theta
    for i in range(1, r + 1):
        if (J >> i) & 1:
            K |= 1ULL << (i % r)
    for i in range(1, r + 1):
        bi = b[i - 1]
        nxt = bit(K, i + 1, r)
        if i == r:
            if bit(K, 0, r):
                c[i - 1] = bi + nxt - 1
            else:
                c[i - 1] = p - bi + nxt - 1
        elif bit(K, i, r):
            c[i - 1] = bi - nxt
        else:
            c[i - 1] = p - bi - nxt
    psi = a_exp - bit(K, 1, r)
    for i in range(1, r + 1):
        if not bit(K, i, r):
            psi += (b[i - 1] - p) * pw[r - i]
    psi = mod(psi, e)
    theta = psi * (1 + pw[r]) + pw[r]
    for i in range(1, r + 1):
        theta += c[i - 1] * pw[2 * r - i]
    Kout[0] = K
    psi_out[0] = psi
    return mod(theta, e2)


cdef void c_cuspidal_simple(i64 p, int r, i64 a_exp, int* b, unsigned long long J,
                            i64* pw, i64* s1, i64* s2) nogil:
    cdef i64 e2 = pw[2 * r] - 1
    cdef int n = 2 * r
    cdef int i
    cdef i64 t
    cdef i64 x = a_exp * (1 + pw[r])
    cdef i64 y = x
    for i in range(n):
        t = (b[(i - 1 + n) % r] - p) * pw[(n - i) % n]
        if (J >> i) & 1:
            x += t
        else:
            y += t
    s1[0] = mod(x, e2)
    s2[0] = mod(y, e2)


cdef int c_factor_b(i64 p, int r, int* c, unsigned long long K, int cusp,
                    i64* pw, int* bk, i64* a_part) nogil:
    # b vector of the K-th factor and the untwisted a exponent;
    # returns 1 if some b is zero, -1 if out of range, else 0
    cdef int i, ci, nxt, ai, bi
    cdef int zero = 0
    cdef i64 a = 0
    for i in range(1, r + 1):
        nxt = bit(K, i + 1, r)
        if cusp:
            ci = c[i - 1]
            if i == r:
                if bit(K, 0, r):
                    ai = nxt
                    bi = ci + 1 - nxt
                else:
                    ai = ci + 1
                    bi = p - ci + nxt - 1
            elif bit(K, i, r):
                ai = 0
                bi = ci + nxt
            else:
                ai = ci + nxt
                bi = p - ci - nxt
        else:
            ci = c[i - 1] + nxt
            if bit(K, i, r):
                ai = 0
                bi = ci
            else:
                ai = ci
                bi = p - ci
        if bi < 0 or bi > p:
            return -1
        if bi == 0:
            zero = 1
        bk[i - 1] = bi
        a += ai * pw[r - i]
    a_part[0] = a
    return zero


cdef int load(object seq, int* out, int r) except -1:
    cdef int i
    if len(seq) != r:
        raise KernelError("vector length mismatch")
    for i in range(r):
        out[i] = seq[i]
    return 0


def reducible_witnesses(i64 p, int r, i64 a_exp, b, i64 psi1, i64 psi2):
    cdef i64 pw[2 * MAXR + 1]
    cdef int bb[MAXR]
    cdef unsigned long long J
    cdef i64 s1, s2, t, e
    cdef int i
    powers(p, 2 * r, pw)
    e = pw[r] - 1
    load(b, bb, r)
    out = []
    for J in range(1ULL << r):
        s1 = a_exp
        s2 = a_exp
        for i in range(1, r + 1):
            t = bb[i - 1] * pw[r - i]
            if bit(J, i, r):
                s1 += t
            else:
                s2 += t
        if mod(s1 - psi1, e) == 0 and mod(s2 - psi2, e) == 0:
            out.append(J)
    return out


def irreducible_witnesses(i64 p, int r, i64 a_exp, b, i64 theta):
    cdef i64 pw[2 * MAXR + 1]
    cdef int bb[MAXR]
    cdef i64 e2, a2, conj, s1, s2, t
    cdef int i, n = 2 * r
    cdef unsigned long long J
    powers(p, 2 * r, pw)
    load(b, bb, r)
    e2 = pw[2 * r] - 1
    a2 = mod(a_exp, e2) * (1 + pw[r])
    theta = mod(theta, e2)
    conj = theta * pw[r] % e2
    out = []
    for J in full_subsets(r):
        s1 = a2
        s2 = a2
        for i in range(n):
            t = bb[(i - 1 + n) % r] * pw[(n - i) % n]
            if (J >> i) & 1:
                s1 += t
            else:
                s2 += t
        s1 = mod(s1, e2)
        s2 = mod(s2, e2)
        if (s1 == theta and s2 == conj) or (s1 == conj and s2 == theta):
            out.append(J)
    return out


cdef list factors(i64 p, int r, int* c, i64 twist, int cusp, i64* pw):
    cdef int bk[MAXR]
    cdef i64 a_part
    cdef i64 e = pw[r] - 1
    cdef unsigned long long K
    cdef int st
    out = []
    for K in range(1ULL << r):
        st = c_factor_b(p, r, c, K, cusp, pw, bk, &a_part)
        if st < 0:
            raise KernelError("factor b out of range")
        if st:
            continue
        out.append((K, digits(p, r, mod(a_part + twist, e)),
                    tuple([bk[i] for i in range(r)])))
    return out


def principal_factors(i64 p, int r, i64 chi1, i64 chi2):
    cdef i64 pw[2 * MAXR + 1]
    cdef int c[MAXR]
    cdef i64 e
    powers(p, 2 * r, pw)
    e = pw[r] - 1
    if mod(chi1 - chi2, e) == 0:
        raise KernelError("scalar type")
    load(digits(p, r, mod(chi2 - chi1, e)), c, r)
    return factors(p, r, c, chi1, 0, pw)


def cuspidal_factors(i64 p, int r, c, i64 psi):
    cdef i64 pw[2 * MAXR + 1]
    cdef int cc[MAXR]
    powers(p, 2 * r, pw)
    load(c, cc, r)
    return factors(p, r, cc, psi, 1, pw)


def reducible_type(i64 p, int r, i64 a_exp, b, unsigned long long J):
    cdef i64 pw[2 * MAXR + 1]
    cdef int bb[MAXR]
    cdef int c[MAXR]
    cdef i64 chi, e
    powers(p, 2 * r, pw)
    e = pw[r] - 1
    load(b, bb, r)
    chi = c_reducible_type(p, r, a_exp, bb, J, pw, c)
    return tuple([c[i] for i in range(r)]), chi, mod(chi + c_enc(c, r, pw), e)


def cuspidal_type(i64 p, int r, i64 a_exp, b, unsigned long long J):
    cdef i64 pw[2 * MAXR + 1]
    cdef int bb[MAXR]
    cdef int c[MAXR]
    cdef unsigned long long K
    cdef i64 psi, theta
    powers(p, 2 * r, pw)
    load(b, bb, r)
    theta = c_cuspidal_type(p, r, a_exp, bb, J, pw, c, &K, &psi)
    return K, tuple([c[i] for i in range(r)]), psi, theta


def cuspidal_simple(i64 p, int r, i64 a_exp, b, unsigned long long J):
    cdef i64 pw[2 * MAXR + 1]
    cdef int bb[MAXR]
    cdef i64 s1, s2
    powers(p, 2 * r, pw)
    load(b, bb, r)
    c_cuspidal_simple(p, r, a_exp, bb, J, pw, &s1, &s2)
    return s1, s2


def sweep_tau_identity(i64 p, int r, bs):
    cdef i64 pw[2 * MAXR + 1]
    cdef int bb[MAXR]
    cdef int c[MAXR]
    cdef unsigned long long K
    cdef unsigned long long J
    cdef i64 psi, theta, conj, s1, s2, a_exp, e, e2
    cdef long long cases = 0
    cdef int k, nf
    cdef unsigned long long fulls[1 << 12]
    powers(p, 2 * r, pw)
    e = pw[r] - 1
    e2 = pw[2 * r] - 1
    fl = full_subsets(r)
    nf = len(fl)
    for k in range(nf):
        fulls[k] = fl[k]
    bad = []
    for b in bs:
        load(b, bb, r)
        for a_exp in range(e):
            for k in range(nf):
                J = fulls[k]
                cases += 1
                theta = c_cuspidal_type(p, r, a_exp, bb, J, pw, c, &K, &psi)
                c_cuspidal_simple(p, r, a_exp, bb, J, pw, &s1, &s2)
                conj = theta * pw[r] % e2
                if not ((s1 == theta and s2 == conj) or (s1 == conj and s2 == theta)):
                    bad.append((a_exp, tuple(b), J))
    return cases, bad


cdef int scan_factors(i64 p, int r, int* c, int cusp, i64 want, i64* pw):
    # bit 0: weak-regularity failure, bit 1: dimension failure, 4: b out of range
    cdef int bk[MAXR]
    cdef i64 a_part, d, dim = 0
    cdef unsigned long long K
    cdef int st, i, res = 0, weak
    for K in range(1ULL << r):
        st = c_factor_b(p, r, c, K, cusp, pw, bk, &a_part)
        if st < 0:
            return 4
        if st:
            continue
        d = 1
        weak = 1
        for i in range(r):
            d *= bk[i]
            if bk[i] < 1 or bk[i] > p - 1:
                weak = 0
        dim += d
        if not weak:
            res |= 1
    if dim != want:
        res |= 2
    return res


def sweep_weak_regularity(i64 p, int r, bs):
    cdef i64 pw[2 * MAXR + 1]
    cdef int bb[MAXR]
    cdef int c[MAXR]
    cdef int cd[MAXR]
    cdef unsigned long long K, J
    cdef i64 psi, chi, a_exp, e, q
    cdef long long cases = 0
    cdef int k, nf, res, i
    cdef unsigned long long fulls[1 << 12]
    powers(p, 2 * r, pw)
    e = pw[r] - 1
    q = pw[r]
    fl = full_subsets(r)
    nf = len(fl)
    for k in range(nf):
        fulls[k] = fl[k]
    bad = []
    for b in bs:
        load(b, bb, r)
        tb = tuple(b)
        for a_exp in range(e):
            for J in range(1ULL << r):
                cases += 1
                chi = c_reducible_type(p, r, a_exp, bb, J, pw, c)
                # the factor formulas want the canonical digits of chi2 - chi1
                chi = mod(c_enc(c, r, pw), e)
                if chi == 0:
                    raise KernelError("scalar type")
                c_digits(p, r, chi, cd)
                res = scan_factors(p, r, cd, 0, q + 1, pw)
                if res == 4:
                    raise KernelError("factor b out of range")
                if res & 1:
                    bad.append(("ps", a_exp, tb, J, "not-weakly-regular"))
                if res & 2:
                    bad.append(("ps", a_exp, tb, J, "dimension"))
            for k in range(nf):
                J = fulls[k]
                cases += 1
                c_cuspidal_type(p, r, a_exp, bb, J, pw, c, &K, &psi)
                res = scan_factors(p, r, c, 1, q - 1, pw)
                if res == 4:
                    raise KernelError("factor b out of range")
                if res & 1:
                    bad.append(("cusp", a_exp, tb, J, "not-weakly-regular"))
                if res & 2:
                    bad.append(("cusp", a_exp, tb, J, "dimension"))
    return cases, bad
