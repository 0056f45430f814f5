#!/usr/bin/env python3
"""Generate rank records for the quadratic twists of the catalog curves.

Output rows are `label,d,lo,hi` (d = 1 is the curve itself, otherwise the
twist by Q(sqrt d)), the format read by `quadtor classify --rank-data`.

Elliptic curves: PARI ellrank bounds; when they do not meet, an analytic
rank of 0 or 1 pins the rank (Gross-Zagier-Kolyvagin).

Genus 2 Jacobians: J1(N) is isogenous to A_f for a newform f of level N with
nontrivial character, so L(J^d, s) = L(f x psi_D, s) L(conj(f) x psi_D, s)
where psi_D is the quadratic character of Q(sqrt d). The conductor of
f x psi_D is searched among small candidates and accepted when the
functional equation checks to 20 digits. Order 0 at s = 1 gives rank 0
(Kato). A positive order is recorded as [0, inf] with the analytic rank
2 * order in the comment; the classifier then falls back to point searches.
Twists with no accepted conductor are left out. X1(13) and X1(18) twists
are only computed for d passing the local screen.

Requires cypari (PARI >= 2.15). Usage: rank_fixture.py OUT.csv [DMAX]
"""
import sys

from cypari import pari

pari.allocatemem(4 * 10**9)
pari.default("realprecision", 38)

ELLIPTIC = {
    "X1_11": [0, -1, -1, 0, 0],
    "X1_14": [1, 0, 1, -1, 0],
    "X1_15": [1, 1, 1, 0, 0],
    "X1_2_10": [0, 1, 0, -1, 0],
    "X1_2_12": [0, -1, 0, 1, 0],
}
# level and character order of the newform attached to J1(N)
GENUS2 = {
    "X1_16": (16, 4),
    "X1_18": (18, 3),
    "X1_13": (13, 6),
}
COEFFS = 10000


def screen13(d):
    return d % 8 == 1


def screen18(d):
    return d % 24 in (1, 9)


GENUS2_FIELDS = {"X1_16": lambda d: True, "X1_18": screen18, "X1_13": screen13}


def squarefree(d):
    return d > 1 and int(pari.issquarefree(d)) == 1


def elliptic_rank(ainvs, d):
    E = pari.ellinit(ainvs)
    if d != 1:
        E = pari.ellinit(pari.elltwist(E, pari.quaddisc(d)))
    r = pari.ellrank(E)
    lo, hi = int(r[0]), int(r[1])
    how = "ellrank"
    if lo != hi:
        a = int(pari.ellanalyticrank(E)[0])
        if a <= 1 and lo <= a <= hi:
            lo = hi = a
            how = "analytic rank %d (GZK)" % a
    return lo, hi, how


def newform_coefficients(level, order):
    G = pari.znstar(level, 1)
    for c in pari.chargalois(G):
        if int(pari.charorder(G, c)) != order or int(pari.zncharisodd(G, c)):
            continue
        mf = pari.mfinit([level, 2, [G, c]], 0)
        if int(pari.mfdim(mf)) > 0:
            f = pari.mfeigenbasis(mf)[0]
            emb = pari.mfembed(f, pari.mfcoefs(f, COEFFS))
            an = emb[0] if pari.type(emb[0]) == "t_VEC" else emb
            return [an[i] for i in range(1, COEFFS + 1)]
    raise RuntimeError("no newform of level %d with character of order %d" % (level, order))


def conductor_candidates(level, D):
    primes = sorted(set(int(p) for p in pari.factor(level * D)[0]))
    cands = [1]
    for p in primes:
        cands = [c * p**e for c in cands for e in range(0, 9 if p == 2 else 5)]
    return sorted(c for c in cands if c % level == 0 or D != 1)


def twisted_lfun(an, D, N):
    tw = [a * int(pari.kronecker(D, n)) for n, a in enumerate(an, 1)]
    dual = [pari.conj(a) for a in tw]
    L = pari.lfuncreate([pari(tw), pari(dual), [0, 1], 2, N, 0])
    w = pari.lfunrootres(L)[2]
    return pari.lfuncreate([pari(tw), pari(dual), [0, 1], 2, N, w])


def genus2_rank(an, level, d):
    D = int(pari.quaddisc(d)) if d > 1 else 1
    for N in conductor_candidates(level, D):
        if N**0.5 * 12 > COEFFS:
            continue
        try:
            L = twisted_lfun(an, D, N)
            if int(pari.lfuncheckfeq(L)) > -20:
                continue
        except Exception:
            continue
        z = int(pari.lfunorderzero(L))
        if z == 0:
            return (0, "0"), "L(f x psi, 1) != 0, conductor %d (Kato)" % N
        return (0, "inf"), "analytic rank %d, conductor %d" % (2 * z, N)
    return None, "no conductor passed the functional equation check"


def main():
    out = sys.argv[1]
    dmax = int(sys.argv[2]) if len(sys.argv) > 2 else 100
    fields = [d for d in range(2, dmax) if squarefree(d)]
    with open(out, "w") as fh:
        fh.write("# label,d,rank_lo,rank_hi  (d = 1: the curve over Q; otherwise its twist by Q(sqrt d))\n")
        fh.write("# generated by scripts/rank_fixture.py with PARI %s\n" % pari.version())
        for label, ainvs in ELLIPTIC.items():
            for d in [1] + fields:
                lo, hi, how = elliptic_rank(ainvs, d)
                fh.write("%s,%d,%d,%d  # %s\n" % (label, d, lo, hi, how))
                fh.flush()
        for label, (level, order) in GENUS2.items():
            an = newform_coefficients(level, order)
            for d in [1] + [d for d in fields if GENUS2_FIELDS[label](d)]:
                r, how = genus2_rank(an, level, d)
                if r is None:
                    fh.write("# %s,%d skipped: %s\n" % (label, d, how))
                else:
                    fh.write("%s,%d,%d,%s  # %s\n" % (label, d, r[0], r[1], how))
                fh.flush()


if __name__ == "__main__":
    main()
