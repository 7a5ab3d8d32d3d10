# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled stepping kernel.

Twin of _kernel_py.py: same operations in the same order, so both backends
produce bit-identical trajectories and outcomes. Any change here must be
mirrored there. Built with -ffp-contract=off to rule out fused multiply-adds
that would perturb the float stream relative to pure Python.
"""

from libc.math cimport cos, sin, floor, M_PI
from libc.stdint cimport int64_t, uint8_t


def move_mt(double x, double y, double theta, double ds, double dtheta,
            double width, double height):
    """One gliding step with specular reflection off the channel walls."""
    cdef double th = theta + dtheta
    cdef double nx = x + ds * cos(th)
    cdef double ny = y + ds * sin(th)
    cdef int flips_x = 0
    cdef int flips_y = 0
    while nx < 0.0 or nx > width:
        if nx < 0.0:
            nx = -nx
        else:
            nx = 2.0 * width - nx
        flips_x += 1
    while ny < 0.0 or ny > height:
        if ny < 0.0:
            ny = -ny
        else:
            ny = 2.0 * height - ny
        flips_y += 1
    if flips_x & 1:
        th = M_PI - th
    if flips_y & 1:
        th = -th
    return nx, ny, th


def simulate_steps(double[:, ::1] ds, double[:, ::1] dtheta,
                   double[::1] x, double[::1] y, double[::1] theta,
                   int64_t[::1] cargo, uint8_t[:, ::1] occupancy,
                   double grid_x0, double grid_y0, double cell_side,
                   Py_ssize_t n_rows, Py_ssize_t n_cols,
                   double ux0, double uy0, double ux1, double uy1,
                   double width, double height, int64_t max_cargo,
                   double[:, :, ::1] traj, int64_t[:, ::1] counts,
                   bint record):
    """Advance all MTs through every step of one symbol interval.

    Same contract as the pure-Python twin: state arrays and the occupancy
    grid are updated in place, traj/counts are filled when record is set,
    and the delivered-vesicle count is returned.
    """
    cdef Py_ssize_t n_steps = ds.shape[0]
    cdef Py_ssize_t n_mts = ds.shape[1]
    cdef Py_ssize_t i, m, r, c
    cdef Py_ssize_t col, row
    cdef int64_t anchored = 0
    cdef int64_t carried = 0
    cdef int64_t delivered = 0
    cdef double th, step, nx, ny
    cdef int flips_x, flips_y

    with nogil:
        for r in range(n_rows):
            for c in range(n_cols):
                if occupancy[r, c] != 0:
                    anchored += 1
        for m in range(n_mts):
            carried += cargo[m]

        for m in range(n_mts):
            # pickup: head inside an occupied loading cell
            if cargo[m] < max_cargo and anchored > 0:
                col = <Py_ssize_t>floor((x[m] - grid_x0) / cell_side)
                row = <Py_ssize_t>floor((y[m] - grid_y0) / cell_side)
                if 0 <= col < n_cols and 0 <= row < n_rows:
                    if occupancy[row, col] != 0:
                        occupancy[row, col] = 0
                        cargo[m] += 1
                        anchored -= 1
                        carried += 1
            # drop-off: head inside the unloading rectangle
            if cargo[m] > 0 and ux0 <= x[m] <= ux1 and uy0 <= y[m] <= uy1:
                delivered += cargo[m]
                carried -= cargo[m]
                cargo[m] = 0
        if record:
            for m in range(n_mts):
                traj[0, m, 0] = x[m]
                traj[0, m, 1] = y[m]
                traj[0, m, 2] = theta[m]
                traj[0, m, 3] = <double>cargo[m]
            counts[0, 0] = anchored
            counts[0, 1] = carried
            counts[0, 2] = delivered

        for i in range(n_steps):
            for m in range(n_mts):
                th = theta[m] + dtheta[i, m]
                step = ds[i, m]
                nx = x[m] + step * cos(th)
                ny = y[m] + step * sin(th)
                flips_x = 0
                while nx < 0.0 or nx > width:
                    if nx < 0.0:
                        nx = -nx
                    else:
                        nx = 2.0 * width - nx
                    flips_x += 1
                flips_y = 0
                while ny < 0.0 or ny > height:
                    if ny < 0.0:
                        ny = -ny
                    else:
                        ny = 2.0 * height - ny
                    flips_y += 1
                if flips_x & 1:
                    th = M_PI - th
                if flips_y & 1:
                    th = -th
                x[m] = nx
                y[m] = ny
                theta[m] = th

                if cargo[m] < max_cargo and anchored > 0:
                    col = <Py_ssize_t>floor((nx - grid_x0) / cell_side)
                    row = <Py_ssize_t>floor((ny - grid_y0) / cell_side)
                    if 0 <= col < n_cols and 0 <= row < n_rows:
                        if occupancy[row, col] != 0:
                            occupancy[row, col] = 0
                            cargo[m] += 1
                            anchored -= 1
                            carried += 1
                if cargo[m] > 0 and ux0 <= nx <= ux1 and uy0 <= ny <= uy1:
                    delivered += cargo[m]
                    carried -= cargo[m]
                    cargo[m] = 0
            if record:
                for m in range(n_mts):
                    traj[i + 1, m, 0] = x[m]
                    traj[i + 1, m, 1] = y[m]
                    traj[i + 1, m, 2] = theta[m]
                    traj[i + 1, m, 3] = <double>cargo[m]
                counts[i + 1, 0] = anchored
                counts[i + 1, 1] = carried
                counts[i + 1, 2] = delivered

    return delivered
