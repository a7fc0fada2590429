"""Q-learning with basic emotions in a grid-world pursuit task."""

from .gridworld import ACTIONS, Action, GridPos, GridWorld
from .qcore import LearningParams, QTable, Rng, epsilon_greedy, greedy_action, td_update
from .appraisal import AppraisalState, Emotion, PowerFit, classify, fit_power_regression
from .affective_policy import MoveDecision, decide, execute_move
from .experiment import (AgentKind, EpisodeRecord, ExperimentConfig, RunSummary, SweepTable,
                         aggregate, equivalent_epsilon, run_agent, run_episode, sweep)
from .stats import TTestResult, paired_t_test, pearson, t_cdf, t_critical

__version__ = "0.1.0"
