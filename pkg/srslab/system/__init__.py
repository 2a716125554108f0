# @Time   : 2026/10/14
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/17
# @Author : SRSLab Team

from loguru import logger

from .base_system import BaseSystem, IterationRecord, SrsConfig, SrsResult, SrsState, predict_ensemble
from .rs_system import RandomSubspace
from .srs_system import SequentialRandomSubspace
from .utils import Subspace, history_table, importance_table, make_probes, null_win_rate, probe_test, select_subspace, \
    significant_wins

system_register_table = {
    'SRS': SequentialRandomSubspace,
    'RS': RandomSubspace,
}


def get_system(config, dataset, system_name='SRS', show_progress=False):
    """
    return the system bound to ``config`` and ``dataset``
    """
    if system_name in system_register_table:
        system = system_register_table[system_name](config, dataset, show_progress)
        logger.info(f'[Build system {system_name}]')
        return system
    else:
        raise NotImplementedError(f'The system [{system_name}] has not been implemented')


def run_srs(dataset, config, show_progress=False) -> SrsResult:
    """Run the sequential random subspace algorithm on ``dataset``."""
    return get_system(config, dataset, 'SRS', show_progress).fit()
