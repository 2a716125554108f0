# @Time   : 2026/10/13
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/16
# @Author : SRSLab Team

"""Data module which generates, reads and writes datasets for the whole toolkit

Attributes:
    generator_register_table (dict): record all supported synthetic scenarios

"""

from loguru import logger

from srslab.data.dataset import *
from srslab.data.utils import load_csv, save_csv, to_distribution, truth_path_for

generator_register_table = {
    'chaining': ChainingGenerator,
    'clique': CliqueGenerator,
    'marginal': MarginalGenerator,
    'madelon_like': MadelonGenerator,
}


def get_generator(spec) -> BaseGenerator:
    """get the generator of a scenario

    Args:
        spec (GeneratorSpec): scenario and its parameters.

    Returns:
        generator bound to ``spec``

    """
    if spec.scenario in generator_register_table:
        generator = generator_register_table[spec.scenario](spec)
        logger.debug(f'[Build generator {spec.scenario}]')
        return generator
    else:
        raise NotImplementedError(f'The generator [{spec.scenario}] has not been implemented')


def generate(spec) -> Dataset:
    """Sample ``spec.n`` rows of a scenario, deterministically from ``spec.seed``."""
    return get_generator(spec).generate()


def population(spec, limit=POPULATION_LIMIT):
    """Exact joint distribution of a scenario, see :meth:`BaseGenerator.population`."""
    return get_generator(spec).population(limit)


def population_dataset(spec, limit=POPULATION_LIMIT) -> Dataset:
    """Population dataset of a scenario, with its relevant set attached."""
    generator = get_generator(spec)
    return Dataset.from_distribution(generator.population(limit), generator.relevant_truth)
