"""Vesicle-based active transport molecular communication toolkit.

Simulates microtubule gliding transport of DNA-anchored vesicles between a
loading and an unloading zone, estimates the resulting channel law by Monte
Carlo, computes its capacity, prices every step of the transport chain in
zeptojoules, and sweeps design parameters for the best information rate per
unit energy.
"""

from .channel import ChannelPmf
from .config import (ConfigError, Rect, SimConfig, config_hash,
                     default_config, load_config, max_cargo, save_config,
                     validate_config)
from .energy import (BaseCounts, Energy, EnergyBreakdown, base_counts_of,
                     hybridization_energy, intra_transport_energy,
                     mt_motion_energy, power, total_energy,
                     vesicle_synthesis_energy)
from .harness import (DesignResult, SweepSpec, emit, evaluate_design,
                      preset_sweep, run_sweep)
from .infotheory import (ConvergenceError, blahut_arimoto,
                         mutual_information, posterior_means)
from .kernels import BACKEND
from .motility import (LoadingGrid, MtState, SymbolOutcome, estimate_channel,
                       run_symbol, run_symbol_detailed, step_mt)

__version__ = "0.1.0"
