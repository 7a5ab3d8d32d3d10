"""Energy bookkeeping for every component of the transport chain.

All quantities are kept in zeptojoules (zJ, 1e-21 J): the building blocks are
one ATP hydrolysis at 83 zJ and one DNA hydrogen bond at 35 zJ, so component
costs stay exactly representable integers or simple real multiples.
"""

import math
from dataclasses import dataclass

ATP_ZJ = 83.0                 # one ATP hydrolysis
HYDROGEN_BOND_ZJ = 35         # one DNA hydrogen bond
PHOSPHOLIPIDS_PER_NM2 = 5.0   # membrane packing density of a secretory vesicle
KINESIN_STEP_NM = 8.0         # distance walked per ATP
KINESIN_ATP_PER_S = 100.0     # hydrolysis reactions per second per motor

ZJ_PER_FJ = 1e6
ZJ_PER_PJ = 1e9
ZJ_PER_J = 1e21

# Sticky-end sequences of the ssDNA linkers on each component. Strand length
# grades the bond strength: loading site < MT tail < unloading site, which is
# what makes pickup and drop-off one-directional.
SSDNA_SEQUENCES = {
    "cargo_tail": "TGTGCAACACTACAATCAGCGAA",
    "loading_site": "TTCGCTGATT",
    "mt": "TTCGCTGATTGTAGT",
    "unloading_site": "TTCGCTGATTGTAGTGTTGCACA",
}


@dataclass(frozen=True)
class Energy:
    """A non-negative energy stored in zeptojoules."""

    zj: float

    def __post_init__(self):
        if not self.zj >= 0:
            raise ValueError(f"energy must be >= 0, got {self.zj} zJ")

    @property
    def fj(self):
        return self.zj / ZJ_PER_FJ

    @property
    def pj(self):
        return self.zj / ZJ_PER_PJ

    @property
    def joules(self):
        return self.zj / ZJ_PER_J


@dataclass(frozen=True)
class BaseCounts:
    """Nucleotide composition of one ssDNA strand."""

    n_a: int
    n_t: int
    n_g: int
    n_c: int

    def __post_init__(self):
        for name in ("n_a", "n_t", "n_g", "n_c"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def length(self):
        return self.n_a + self.n_t + self.n_g + self.n_c


def base_counts_of(sequence):
    """Count A/T/G/C letters in an ssDNA string (whitespace ignored)."""
    counts = {"A": 0, "T": 0, "G": 0, "C": 0}
    cleaned = 0
    for pos, ch in enumerate(sequence):
        if ch.isspace():
            continue
        if ch not in counts:
            raise ValueError(f"invalid base {ch!r} at position {pos}")
        counts[ch] += 1
        cleaned += 1
    if cleaned == 0:
        raise ValueError("empty ssDNA sequence")
    return BaseCounts(n_a=counts["A"], n_t=counts["T"],
                      n_g=counts["G"], n_c=counts["C"])


def hybridization_energy(bases):
    """Bond energy of a fully hybridized strand: A/T pairs carry two
    hydrogen bonds, G/C pairs three."""
    bonds = 2 * (bases.n_a + bases.n_t) + 3 * (bases.n_c + bases.n_g)
    return Energy(float(HYDROGEN_BOND_ZJ * bonds))


def vesicle_synthesis_energy(r_v_nm):
    """Cost of building one vesicle of radius r_v (nm): one ATP per
    phospholipid, five phospholipids per nm^2 of surface."""
    if r_v_nm < 0:
        raise ValueError(f"vesicle radius must be >= 0, got {r_v_nm}")
    area_nm2 = 4.0 * math.pi * r_v_nm * r_v_nm
    return Energy(PHOSPHOLIPIDS_PER_NM2 * area_nm2 * ATP_ZJ)


def intra_transport_energy(r_tn_nm):
    """Cost of walking one vesicle from the synthesis site to the membrane,
    roughly half the transmitter radius at 8 nm per ATP."""
    if r_tn_nm < 0:
        raise ValueError(f"transmitter radius must be >= 0, got {r_tn_nm}")
    steps = math.ceil((r_tn_nm / 2.0) / KINESIN_STEP_NM)
    return Energy(steps * ATP_ZJ)


def mt_motion_energy(t_s, mt_length_um, kinesin_density_per_um2):
    """Cost of gliding one MT for t seconds.

    L_m * sqrt(sigma_k) motors touch the filament at any instant, each
    hydrolyzing 100 ATP/s whether or not cargo is aboard.
    """
    if t_s < 0 or mt_length_um < 0 or kinesin_density_per_um2 < 0:
        raise ValueError("time, MT length, and kinesin density must be >= 0")
    motors = mt_length_um * math.sqrt(kinesin_density_per_um2)
    return Energy(KINESIN_ATP_PER_S * t_s * motors * ATP_ZJ)


# Per-event hybridization costs fixed by the linker sequences above.
ANCHOR_ENERGY = hybridization_energy(base_counts_of(SSDNA_SEQUENCES["loading_site"]))
LOAD_ENERGY = hybridization_energy(base_counts_of(SSDNA_SEQUENCES["mt"]))
DROPOFF_ENERGY = hybridization_energy(base_counts_of(SSDNA_SEQUENCES["unloading_site"]))


@dataclass(frozen=True)
class EnergyBreakdown:
    """Average per-symbol energy of one design point, split by component.

    synthesis, intra_transport, anchor scale with the mean released count;
    load and dropoff with the mean delivered count; mt_motion is charged for
    all MTs over the whole symbol duration regardless of cargo.
    """

    synthesis: Energy
    intra_transport: Energy
    anchor: Energy
    mt_motion: Energy
    load: Energy
    dropoff: Energy
    total: Energy

    def components(self):
        return {
            "synthesis": self.synthesis,
            "intra_transport": self.intra_transport,
            "anchor": self.anchor,
            "mt_motion": self.mt_motion,
            "load": self.load,
            "dropoff": self.dropoff,
        }

    def to_dict(self):
        d = {}
        for name, e in {**self.components(), "total": self.total}.items():
            d[f"{name}_zj"] = e.zj
        for name, e in {**self.components(), "total": self.total}.items():
            d[f"{name}_pj"] = e.pj
        return d

    @classmethod
    def from_dict(cls, data):
        return cls(**{name: Energy(data[f"{name}_zj"])
                      for name in ("synthesis", "intra_transport", "anchor",
                                   "mt_motion", "load", "dropoff", "total")})


def total_energy(config, mean_x, mean_y):
    """Average per-symbol energy for mean released count mean_x and mean
    delivered count mean_y.

    Requires 0 <= mean_y <= mean_x <= symbol_set_size - 1. The total is the
    sum of the six stored components.
    """
    if not 0 <= mean_y <= mean_x <= config.symbol_set_size - 1:
        raise ValueError(
            f"need 0 <= mean_y <= mean_x <= {config.symbol_set_size - 1}, "
            f"got mean_x={mean_x}, mean_y={mean_y}")
    synthesis = vesicle_synthesis_energy(config.vesicle_radius).zj * mean_x
    intra = intra_transport_energy(config.tx_node_radius).zj * mean_x
    anchor = ANCHOR_ENERGY.zj * mean_x
    motion = mt_motion_energy(config.symbol_duration, config.mt_length,
                              config.kinesin_density).zj * config.num_mts
    load = LOAD_ENERGY.zj * mean_y
    dropoff = DROPOFF_ENERGY.zj * mean_y
    total = synthesis + intra + anchor + motion + load + dropoff
    return EnergyBreakdown(
        synthesis=Energy(synthesis),
        intra_transport=Energy(intra),
        anchor=Energy(anchor),
        mt_motion=Energy(motion),
        load=Energy(load),
        dropoff=Energy(dropoff),
        total=Energy(total),
    )


def power(total, tau_s):
    """Average power in watts over one symbol of duration tau_s."""
    if not tau_s > 0:
        raise ValueError(f"symbol duration must be > 0, got {tau_s}")
    return total.joules / tau_s


def per_vesicle_costs(config):
    """Costs charged per released vesicle and per delivered vesicle, zJ."""
    released = (vesicle_synthesis_energy(config.vesicle_radius).zj
                + intra_transport_energy(config.tx_node_radius).zj
                + ANCHOR_ENERGY.zj)
    delivered = LOAD_ENERGY.zj + DROPOFF_ENERGY.zj
    return released, delivered


__all__ = [
    "ATP_ZJ", "HYDROGEN_BOND_ZJ", "SSDNA_SEQUENCES",
    "Energy", "BaseCounts", "EnergyBreakdown",
    "base_counts_of", "hybridization_energy", "vesicle_synthesis_energy",
    "intra_transport_energy", "mt_motion_energy", "total_energy", "power",
    "ANCHOR_ENERGY", "LOAD_ENERGY", "DROPOFF_ENERGY", "per_vesicle_costs",
]
