from .clique_generator import CliqueGenerator
