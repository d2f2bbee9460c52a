"""Transmit beam training for sub-connected hybrid mmWave MIMO.

Compares an energy-weighted cyclic-rotation estimator (COM) with the
802.11ad/ay max-energy selection rule by log-det capacity over a
Saleh-Valenzuela channel.
"""
from ._backend import available_backends, set_backend, use_backend
from .channel import ArrayGeometry, PathParams, PathSet, assemble_channel, sample_paths, ula_response
from .codebook import AnalogPrecoder, Codebook, RotationAssignment, assemble_precoder, make_codebook, rotate
from .config import SimConfig, load_config
from .errors import (
    BeamTrainError, CombinerRankError, ConfigurationError, DegenerateObservationError,
    NumericalError, ScheduleError,
)
from .metrics import capacity, evaluate_method
from .sweep import SweepResult, SweepRow, run_sweep
from .training import baseline_select, com_estimate, compute_weights, trn_schedule
from .transceiver import Combiner, ObservationSet, omni_combiner, run_training_trials, synthesize_rx

__version__ = "0.1.0"


def backend_name():
    from . import _backend
    return _backend.kernels.NAME
