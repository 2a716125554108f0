__version__ = '0.1.0'

from srslab.config import Config
from srslab.data import generate, get_generator, load_csv, save_csv
from srslab.system import get_system, run_srs
from srslab.cli import main, run_srslab
