"""Security experiments, estimators and exact small-instance oracles."""

from .correctness import CorrectnessEstimate, measure_correctness
from .exact import ExactResult, exact_distance_oracle, statistical_distance
from .experiments import run_experiment
from .mac_forgery import ForgeryStrategy, acceptance_fraction, standard_strategies
from .reusability import (CanaryDistinguisher, ConstantDistinguisher, Distinguisher,
                          KeyReuseDistinguisher, LinearAlgebraDistinguisher,
                          ReusabilityView, XorOfPadsDistinguisher, default_distinguishers,
                          run_reusability_game, run_reusability_suite)
from .robustness import (BitFlipForger, Forger, OtpShiftForger, RandomTagForger,
                         RepOracle, ReplayForger, RootPlantingForger, default_forgers,
                         robustness_trial, run_robustness_game)
from .schemes import BrokenScheme, RfeScheme, SrrfeScheme, make_scheme
from .stats import AdvantageEstimate, RateEstimate, trial_streams, wilson_interval
from .transcript import GameTranscript, QueryRecord

__all__ = [name for name in dir() if not name.startswith("_")]
