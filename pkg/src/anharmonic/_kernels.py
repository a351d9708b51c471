"""Compiled inner loops: re-centred Taylor stepping for y'' = q(z) y.

``q`` is always passed as ascending complex coefficients of ``P(z) - lam``.
"""

import math

import numpy as np
from numba import njit

HCAP = 1.5  # max step in units of the local length scale


@njit(cache=True, nogil=True)
def horner(c, z):
    acc = c[c.shape[0] - 1] + 0j
    for j in range(c.shape[0] - 2, -1, -1):
        acc = acc * z + c[j]
    return acc


@njit(cache=True, nogil=True)
def taylor_shift(c, z0):
    """Coefficients of q(z0 + h) in powers of h."""
    s = c.copy()
    n = s.shape[0]
    for k in range(n - 1):
        for j in range(n - 2, k - 1, -1):
            s[j] += z0 * s[j + 1]
    return s


@njit(cache=True, nogil=True)
def local_scale(s):
    kappa = 1e-300
    for j in range(s.shape[0]):
        a = abs(s[j])
        if a > 0.0:
            v = a ** (1.0 / (j + 2))
            if v > kappa:
                kappa = v
    return kappa


@njit(cache=True, nogil=True)
def fill_series(s, y, dy, a):
    """Taylor coefficients a[0..N] of the solution with y(0)=y, y'(0)=dy."""
    order = a.shape[0] - 1
    deg = s.shape[0] - 1
    a[0] = y
    a[1] = dy
    for n in range(order - 1):
        acc = 0j
        top = n if n < deg else deg
        for j in range(top + 1):
            acc += s[j] * a[n - j]
        a[n + 2] = acc / ((n + 2) * (n + 1))


@njit(cache=True, nogil=True)
def march(c, z0, z1, Y0, DY0, tol, order, hmin, rescale, record):
    """Carry solutions (Y, DY) along the segment z0 -> z1.

    Returns (Y, DY, logscale, status, ts, ys) where status 1 flags step
    underflow and ts/ys hold the step nodes (distance along segment, Y[0]).
    """
    n = Y0.shape[0]
    Y = Y0.astype(np.complex128)
    DY = DY0.astype(np.complex128)
    length = abs(z1 - z0)
    ts = [0.0]
    ys = [Y[0]]
    logscale = 0.0
    if length == 0.0:
        return Y, DY, logscale, 0, np.array(ts), np.array(ys)
    u = (z1 - z0) / length
    a = np.empty(order + 1, dtype=np.complex128)
    coef = np.empty((n, order + 1), dtype=np.complex128)
    t = 0.0
    status = 0
    while t < length:
        z = z0 + u * t
        s = taylor_shift(c, z)
        kappa = local_scale(s)
        remaining = length - t
        h = HCAP / kappa
        for i in range(n):
            fill_series(s, Y[i], DY[i], a)
            for m in range(order + 1):
                coef[i, m] = a[m]
            scale = max(abs(a[0]), abs(a[1]) / kappa)
            if scale == 0.0:
                continue
            # sparse potentials leave periodic gaps in the series; span a full period
            for m in range(max(2, order - c.shape[0]), order + 1):
                am = abs(a[m])
                if am > 0.0:
                    hm = (tol * scale / am) ** (1.0 / m)
                    if hm < h:
                        h = hm
        last = False
        if h >= remaining:
            h = remaining
            last = True
        elif h < hmin:
            status = 1
            break
        hc = u * h
        for i in range(n):
            yv = coef[i, order]
            dv = order * coef[i, order]
            for m in range(order - 1, -1, -1):
                yv = yv * hc + coef[i, m]
                if m >= 1:
                    dv = dv * hc + m * coef[i, m]
            Y[i] = yv
            DY[i] = dv
        t = length if last else t + h
        if rescale:
            big = 0.0
            for i in range(n):
                big = max(big, abs(Y[i]), abs(DY[i]))
            if big > 1e100 or (0.0 < big < 1e-100):
                for i in range(n):
                    Y[i] /= big
                    DY[i] /= big
                logscale += math.log(big)
        if record:
            ts.append(t)
            ys.append(Y[0])
    return Y, DY, logscale, status, np.array(ts), np.array(ys)


@njit(cache=True, nogil=True)
def ray_action(c, omega, r):
    """Relative dominant/recessive growth exponent along the ray omega*[0, r]."""
    npts = 200
    dt = r / npts
    total = 0.0
    prev = abs((np.sqrt(omega * omega * horner(c, 0j))).real)
    for k in range(1, npts + 1):
        t = k * dt
        cur = abs((np.sqrt(omega * omega * horner(c, omega * t))).real)
        total += 0.5 * (prev + cur) * dt
        prev = cur
    return total


@njit(cache=True, nogil=True)
def ray_radius(c, omega, target, r_start):
    """Smallest radius where ray_action reaches target, by one cumulative pass."""
    dt = max(r_start, 0.5) / 200.0
    total = 0.0
    prev = abs((np.sqrt(omega * omega * horner(c, 0j))).real)
    t = 0.0
    while t < 1e6:
        cur = abs((np.sqrt(omega * omega * horner(c, omega * (t + dt)))).real)
        inc = 0.5 * (prev + cur) * dt
        if total + inc >= target:
            return t + dt * (target - total) / inc
        total += inc
        t += dt
        prev = cur
    return t


@njit(cache=True, nogil=True)
def recessive_run(c, zt, zvia, zm, zf, tol, order, hmin):
    """Solution decaying towards zf, carried inward along zf -> zvia -> zt and zf -> zm.

    Returns (v(zt), v'(zt), v(zm), v'(zm), log-scale of v(zt) relative to v(zm), status).
    """
    qf = horner(c, zf)
    sig = np.sqrt(qf)
    direction = zf / abs(zf)
    if (direction * sig).real < 0.0:
        sig = -sig
    # first WKB correction to the decay rate
    dq = 0j
    for j in range(1, c.shape[0]):
        dq += j * c[j] * zf ** (j - 1)
    Y0 = np.array([1.0 + 0j])
    DY0 = np.array([-sig - dq / (4.0 * qf)])
    Y1, DY1, l1, st1, _, _ = march(c, zf, zvia, Y0, DY0, tol, order, hmin, True, False)
    Y2, DY2, l2, st2, _, _ = march(c, zvia, zt, Y1, DY1, tol, order, hmin, True, False)
    Y3, DY3, l3, st3, _, _ = march(c, zf, zm, Y0, DY0, tol, order, hmin, True, False)
    st = max(st1, st2, st3)
    return Y2[0], DY2[0], Y3[0], DY3[0], l1 + l2 - l3, st


@njit(cache=True, nogil=True)
def evaluate_points(c, y0, dy0, zs, recessive, rms, yms, dyms, lms, tol, order, hmin, smax,
                    sextra):
    """Stable values of one solution at many points.

    In a sector where the solution is recessive, points whose growth exponent
    exceeds smax are reached by matching against the decaying solution,
    launched far out on the sector bisector and carried inward, first along
    the bisector and then across to the point. Both legs run in the direction
    in which that solution grows. rms, yms, dyms, lms hold per sector the
    matching radius on the bisector and the solution there (value,
    derivative, log-scale).
    Returns (y, dy, logscale, status) arrays.
    """
    npt = zs.shape[0]
    nsec = recessive.shape[0]
    ys = np.empty(npt, dtype=np.complex128)
    dys = np.empty(npt, dtype=np.complex128)
    logs = np.zeros(npt)
    stat = np.zeros(npt, dtype=np.int64)
    Y0 = np.array([y0 + 0j])
    DY0 = np.array([dy0 + 0j])
    for k in range(npt):
        z = zs[k]
        r = abs(z)
        forward = True
        j = 0
        if r > 0.0:
            ang = math.atan2(z.imag, z.real)
            j = int(math.floor((ang * nsec / math.pi + 1.0) / 2.0)) % nsec
            if recessive[j]:
                if ray_action(c, z / r, r) > smax:
                    forward = False
        if forward:
            Y, DY, ls, st, _, _ = march(c, 0j, z, Y0, DY0, tol, order, hmin, True, False)
            ys[k] = Y[0]
            dys[k] = DY[0]
            logs[k] = ls
            stat[k] = st
            continue
        wj = complex(math.cos(2.0 * math.pi * j / nsec), math.sin(2.0 * math.pi * j / nsec))
        rm = rms[j]
        s_bis = max(ray_action(c, wj, r), smax)
        rf = ray_radius(c, wj, s_bis + sextra, max(r, rm))
        zm = wj * rm
        vt, dvt, vm, dvm, lrel, st1 = recessive_run(c, z, wj * r, zm, wj * rf, tol, order, hmin)
        # y(z) = v(z) * y(zm) / v(zm); pick the better-conditioned ratio
        if abs(vm) >= abs(dvm) / max(1.0, abs(np.sqrt(horner(c, zm)))):
            ratio = yms[j] / vm
        else:
            ratio = dyms[j] / dvm
        ys[k] = vt * ratio
        dys[k] = dvt * ratio
        logs[k] = lms[j] + lrel
        stat[k] = st1
    return ys, dys, logs, stat
