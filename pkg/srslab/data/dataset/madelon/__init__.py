from .madelon_generator import MadelonGenerator
