"""Pure-Python stepping kernel.

Twin of the compiled kernel in _kernel.pyx: same operations in the same
order, so both backends produce bit-identical trajectories and outcomes.
Any change here must be mirrored there.
"""

from math import cos, sin, floor, pi


def move_mt(x, y, theta, ds, dtheta, width, height):
    """One gliding step with specular reflection off the channel walls.

    The heading first picks up dtheta, the head advances by ds along the new
    heading, and any wall crossing folds the position back inside and mirrors
    the heading about the wall normal (x-walls first, then y-walls).
    """
    th = theta + dtheta
    nx = x + ds * cos(th)
    ny = y + ds * sin(th)
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
        th = pi - th
    if flips_y & 1:
        th = -th
    return nx, ny, th


def simulate_steps(ds, dtheta, x, y, theta, cargo, occupancy,
                   grid_x0, grid_y0, cell_side, n_rows, n_cols,
                   ux0, uy0, ux1, uy1, width, height, max_cargo,
                   traj, counts, record):
    """Advance all MTs through every step of one symbol interval.

    ds, dtheta: (n_steps, n_mts) pre-drawn step lengths and heading changes.
    x, y, theta, cargo: (n_mts,) state arrays, updated in place.
    occupancy: (n_rows, n_cols) uint8 loading grid, updated in place.
    (ux0, uy0, ux1, uy1): unloading rectangle; width, height: channel extent.
    traj: (n_steps+1, n_mts, 4) float64 per-step (x, y, theta, cargo), and
    counts: (n_steps+1, 3) int64 per-step (anchored, carried, delivered);
    both written only when record is true.

    Pickup and drop-off are checked at the head position once per step,
    including the initial placement, MTs in index order. Returns the number
    of delivered vesicles.
    """
    n_steps = ds.shape[0]
    n_mts = ds.shape[1]

    # list-of-lists access is much faster than elementwise ndarray indexing
    ds_l = ds.tolist()
    dth_l = dtheta.tolist()
    x_l = x.tolist()
    y_l = y.tolist()
    th_l = theta.tolist()
    cargo_l = cargo.tolist()
    occ_l = occupancy.reshape(-1).tolist()

    anchored = 0
    for cell in occ_l:
        anchored += cell
    carried = 0
    for c in cargo_l:
        carried += c
    delivered = 0

    for m in range(n_mts):
        # pickup: head inside an occupied loading cell
        if cargo_l[m] < max_cargo and anchored > 0:
            col = int(floor((x_l[m] - grid_x0) / cell_side))
            row = int(floor((y_l[m] - grid_y0) / cell_side))
            if 0 <= col < n_cols and 0 <= row < n_rows:
                idx = row * n_cols + col
                if occ_l[idx] != 0:
                    occ_l[idx] = 0
                    cargo_l[m] += 1
                    anchored -= 1
                    carried += 1
        # drop-off: head inside the unloading rectangle
        if cargo_l[m] > 0 and ux0 <= x_l[m] <= ux1 and uy0 <= y_l[m] <= uy1:
            delivered += cargo_l[m]
            carried -= cargo_l[m]
            cargo_l[m] = 0
    if record:
        for m in range(n_mts):
            traj[0, m, 0] = x_l[m]
            traj[0, m, 1] = y_l[m]
            traj[0, m, 2] = th_l[m]
            traj[0, m, 3] = cargo_l[m]
        counts[0, 0] = anchored
        counts[0, 1] = carried
        counts[0, 2] = delivered

    for i in range(n_steps):
        ds_row = ds_l[i]
        dth_row = dth_l[i]
        for m in range(n_mts):
            th = th_l[m] + dth_row[m]
            step = ds_row[m]
            nx = x_l[m] + step * cos(th)
            ny = y_l[m] + step * sin(th)
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
                th = pi - th
            if flips_y & 1:
                th = -th
            x_l[m] = nx
            y_l[m] = ny
            th_l[m] = th

            if cargo_l[m] < max_cargo and anchored > 0:
                col = int(floor((nx - grid_x0) / cell_side))
                row = int(floor((ny - grid_y0) / cell_side))
                if 0 <= col < n_cols and 0 <= row < n_rows:
                    idx = row * n_cols + col
                    if occ_l[idx] != 0:
                        occ_l[idx] = 0
                        cargo_l[m] += 1
                        anchored -= 1
                        carried += 1
            if cargo_l[m] > 0 and ux0 <= nx <= ux1 and uy0 <= ny <= uy1:
                delivered += cargo_l[m]
                carried -= cargo_l[m]
                cargo_l[m] = 0
        if record:
            for m in range(n_mts):
                traj[i + 1, m, 0] = x_l[m]
                traj[i + 1, m, 1] = y_l[m]
                traj[i + 1, m, 2] = th_l[m]
                traj[i + 1, m, 3] = cargo_l[m]
            counts[i + 1, 0] = anchored
            counts[i + 1, 1] = carried
            counts[i + 1, 2] = delivered

    x[:] = x_l
    y[:] = y_l
    theta[:] = th_l
    cargo[:] = cargo_l
    for r in range(n_rows):
        base = r * n_cols
        for c in range(n_cols):
            occupancy[r, c] = occ_l[base + c]
    return delivered
