from .base_dataset import BaseGenerator, BinaryGenerator, Dataset, GeneratorSpec, POPULATION_LIMIT, SCENARIOS
from .chaining import ChainingGenerator
from .clique import CliqueGenerator
from .madelon import MadelonGenerator
from .marginal import MarginalGenerator
