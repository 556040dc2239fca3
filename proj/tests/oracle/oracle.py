"""Independent high-precision oracle for frozen test constants (mpmath)."""
import mpmath as mp

mp.mp.dps = 40


def W(x):
    return mp.lambertw(x).real


def h(x):
    return (1 + x) * mp.log(1 + x) - x


def g(x):
    return 3 * x**2 / (2 * x + 6)


def bennett_log(sig2, s_list, t, f=h):
    n = len(sig2)
    v = mp.fsum(sig2) / n
    s = max(s_list)
    return -n * v / s**2 * f(t * s / v)


def hoeffding_log(ranges, t):
    n = len(ranges)
    return -2 * n**2 * t**2 / mp.fsum((hi - lo) ** 2 for lo, hi in ranges)


def lam_single(s, sig2, ti):
    # minimise b(l) = log(gamma(e^{ls}-1-ls)+1) - l*ti by root finding, independent of W
    gam = sig2 / s**2
    db = lambda l: gam * s * (mp.exp(l * s) - 1) / (gam * (mp.exp(l * s) - 1 - l * s) + 1) - ti
    return mp.findroot(db, (mp.mpf(0) + mp.mpf('1e-30'), mp.mpf(200) / s), solver='illinois')


def lam_single_closed(s, sig2, ti):
    e = s / ti + s**2 / sig2 - 1 + mp.log((s - ti) / ti)
    return 1 / ti + s / sig2 - 1 / s - W(mp.exp(e)) / s


def mgf_log(s, sig2, l):
    return mp.log(sig2 / s**2 * (mp.exp(l * s) - 1 - l * s) + 1)


def refined_log(s_list, sig2, t):
    n = len(s_list)
    sb = mp.fsum(s_list) / n
    lams = [lam_single_closed(si, vi, t * si / sb) for si, vi in zip(s_list, sig2)]
    w = [si**2 / (1 - mp.exp(-si**2 / vi)) for si, vi in zip(s_list, sig2)]
    lam = mp.fsum(wi * li for wi, li in zip(w, lams)) / mp.fsum(w)
    return -lam * n * t + mp.fsum(mgf_log(si, vi, lam) for si, vi in zip(s_list, sig2)), lam


if __name__ == '__main__':
    print('W(1)', W(1), 'W(e^2)', W(mp.e**2), 'W(e^100)', W(mp.exp(100)))
    # toy
    s = [mp.mpf(5), mp.mpf(95)]
    v = [mp.mpf(625), mp.mpf(400)]
    t = mp.mpf(28)
    rl, lam = refined_log(s, v, t)
    print('toy refined', mp.exp(rl), 'lambda', lam)
    print('toy bennett', mp.exp(bennett_log(v, s, t)))
    print('toy bernstein', mp.exp(bennett_log(v, s, t, g)))
    print('toy hoeffding', mp.exp(hoeffding_log([(25, 75), (5, 100)], t)))
    print('lam(1,1,.5) closed', lam_single_closed(1, 1, mp.mpf(0.5)), 'root', lam_single(mp.mpf(1), mp.mpf(1), mp.mpf(0.5)))
    l = lam_single_closed(1, 1, mp.mpf(0.5))
    print('b(1,1,.5) at lam*', mgf_log(1, 1, l) - l * mp.mpf(0.5), 'refined prob', mp.exp(mgf_log(1, 1, l) - l * mp.mpf(0.5)))
    print('mgf(1,1,1)', mgf_log(1, 1, 1), 'mgf(2,.5,.001)', mgf_log(2, mp.mpf(0.5), mp.mpf(0.001)))
    print('bennett single', mp.exp(bennett_log([mp.mpf(0.25)], [1], mp.mpf(0.5))), 'bernstein', mp.exp(bennett_log([mp.mpf(0.25)], [1], mp.mpf(0.5), g)))
    # allocation grids
    for name, mus, sigs in [('three', ['0.3030', '0.2400', '0.6178'], ['0.2601', '0.5248', '0.7645']),
                            ('four', ['0.1474', '0.6088', '0.1785', '0.7585'], ['0.0593', '0.6218', '0.2183', '0.4597'])]:
        mus = [mp.mpf(m) for m in mus]
        sigs = [mp.mpf(x) for x in sigs]
        lo, hi = mp.mpf(0), min(mus)
        print(name)
        for k in range(5):
            tau = lo + (hi - lo) * (k + mp.mpf(0.5)) / 5
            lams = [lam_single_closed(m, sg**2, m - tau) for m, sg in zip(mus, sigs)]
            root = [lam_single(m, sg**2, m - tau) for m, sg in zip(mus, sigs)]
            logphi = mp.fsum(-li * (m - tau) + mgf_log(m, sg**2, li) for li, m, sg in zip(lams, mus, sigs))
            tot = mp.fsum(lams)
            print('  tau', mp.nstr(tau, 17), 'alpha', [mp.nstr(li / tot, 17) for li in lams],
                  'phi', mp.nstr(mp.exp(logphi), 17), 'rootcheck', mp.nstr(max(abs(a - b) for a, b in zip(lams, root)), 3))
