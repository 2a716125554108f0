from .marginal_generator import MarginalGenerator
