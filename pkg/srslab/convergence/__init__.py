# @Time   : 2026/10/15
# @Author : SRSLab Team

from .markov_chain import CHAIN_SCENARIOS, MarkovChainModel, ScenarioSpec, build_chain, closed_form_estimate, \
    comb_ratio, expected_absorption_time, expected_absorption_times, expected_found_curve, log_comb, n_retained
from .simulation import SimulationResult, simulate_process
from .tables import REFERENCE_CONFIGS, as_config, curve_table, expected_time_table, format_expected_time, \
    reproduce_tables, simulated_curve_table
