from .chaining_generator import ChainingGenerator
