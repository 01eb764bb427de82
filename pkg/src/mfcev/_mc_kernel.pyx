# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop of the absorbing square-root path simulation.

One call advances every live path by a single Euler step.  The update
expression mirrors the numpy fallback operation for operation (and the
extension is compiled with -ffp-contract=off), so both backends produce
bit-identical paths from the same normal draws.
"""

from libc.math cimport sqrt


def step_paths(double[::1] x, unsigned char[::1] alive, double[::1] default_time,
               const double[::1] z, double adt, double b, double csd,
               double t_next):
    """Advance live paths one step; absorb at the first nonpositive state.

    x           current state per path (dead paths hold 0), updated in place
    alive       1 while the path has not defaulted, updated in place
    default_time  grid time of absorption (NaN until it happens)
    z           standard normal draws for this step
    adt         A * dt, the linear-drift increment factor
    b           constant drift increment over the step
    csd         diffusion scale: (2-alpha) * delta * sqrt(dv)
    t_next      right endpoint of the step, recorded as the default time

    Returns the number of paths still alive.
    """
    cdef Py_ssize_t i, n = x.shape[0]
    cdef Py_ssize_t n_alive = 0
    cdef double xi, xm, xn
    with nogil:
        for i in range(n):
            if alive[i]:
                xi = x[i]
                xm = xi if xi > 0.0 else 0.0
                xn = ((xi + adt * xi) + b) + ((csd * sqrt(xm)) * z[i])
                if xn <= 0.0:
                    alive[i] = 0
                    default_time[i] = t_next
                    x[i] = 0.0
                else:
                    x[i] = xn
                    n_alive += 1
    return n_alive
