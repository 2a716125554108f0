# @Time   : 2026/10/16
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

import json
import os
import sys
import time

import yaml
from loguru import logger
from tqdm import tqdm

from . import LOG_PATH, SAVE_PATH

GLOBAL_DEFAULTS = {
    'seed': 0,
    'output': SAVE_PATH,
    'format': 'csv',
    'jobs': 1,
    'log_dir': LOG_PATH,
    'debug': False,
}

COMMAND_DEFAULTS = {
    'generate': {
        'scenario': 'chaining',
        'p': 100,
        'r': 5,
        'n': 1000,
        'noise': 0.0,
        'arity': 2,
        'clusters_per_class': 2,
        'feature_noise': 0.2,
        'name': None,
    },
    'run': {
        'dataset': None,
        'truth': None,
        'system': 'SRS',
        'q': None,
        'T': 100,
        'alpha': 0.5,
        'K': 1,
        'probe_count': 1,
        'probe_rule': 'strict_max',
        'probe_quantile': 0.95,
        'probe_kind': 'permutation',
        'probe_arity': 2,
        'acceptance': 'binomial',
        'significance': 0.05,
        'trees_per_iteration': 1,
        'repeat': 1,
        'test_fraction': 0.0,
    },
    'converge': {
        'configs': None,
        'scenario': None,
        'p': None,
        'q': None,
        'r': None,
        'alphas': [0.0, 1.0],
        'simulate': 0,
        'horizon': 0,
        'simultaneous_discovery': True,
    },
    'oracle': {
        'distribution': None,
        'dataset': None,
        'variables': None,
        'q': None,
        'tolerance': 1e-10,
        'limit': 12,
    },
}

FORMATS = ('csv', 'json')


class Config:
    """Configurator module that resolves the parameters of one command.

    Values come, by increasing precedence, from the command defaults, the
    ``yaml`` config file and the command line overrides.
    """

    def __init__(self, command, config_file=None, overrides=None, debug=False, setup_logging=True):
        """Resolve parameters and set log level.

        Args:
            command (str): one of ``generate``, ``run``, ``converge``, ``oracle``.
            config_file (str, optional): path to a ``yaml`` config file. Defaults to None.
            overrides (dict, optional): values given on the command line; ``None`` values are ignored.
            debug (bool, optional): log at ``DEBUG`` level. Defaults to False.
            setup_logging (bool, optional): install the loguru sinks. Defaults to True.

        Raises:
            ValueError: unknown command, unknown keys or unknown output format.

        """
        if command not in COMMAND_DEFAULTS:
            raise ValueError(f'unknown command [{command}], expected one of {", ".join(COMMAND_DEFAULTS)}')
        self.command = command
        self.opt = dict(GLOBAL_DEFAULTS)
        self.opt.update(COMMAND_DEFAULTS[command])
        if config_file:
            self._update(self.load_yaml_configs(config_file), f'config file {config_file}')
        if overrides:
            self._update({k: v for k, v in overrides.items() if v is not None}, 'command line')
        if debug:
            self.opt['debug'] = True
        if self.opt['format'] not in FORMATS:
            raise ValueError(f'unknown output format [{self.opt["format"]}], expected one of {", ".join(FORMATS)}')

        if setup_logging:
            self._setup_logging()
        logger.info(f'[Command: {command}]')
        logger.info("[Config]" + '\n' + json.dumps(self.opt, indent=4))

    def _update(self, values, source):
        unknown = sorted(set(values) - set(self.opt))
        if unknown:
            raise ValueError(f'unknown keys in {source} for [{self.command}]: {", ".join(unknown)}')
        self.opt.update(values)

    def _setup_logging(self):
        level = 'DEBUG' if self.opt['debug'] else 'INFO'
        logger.remove()
        log_dir = self.opt['log_dir']
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
            log_name = f'{self.command}_{time.strftime("%Y-%m-%d-%H-%M-%S", time.localtime())}.log'
            logger.add(os.path.join(log_dir, log_name), level=level)
        logger.add(lambda msg: tqdm.write(msg, file=sys.stderr, end=''), colorize=True, level=level)

    @staticmethod
    def load_yaml_configs(filename):
        """This function reads ``yaml`` file to build config dictionary

        Args:
            filename (str): path to ``yaml`` config

        Returns:
            dict: config

        Raises:
            ValueError: the file does not hold a mapping.

        """
        with open(filename, 'r', encoding='utf-8') as f:
            loaded = yaml.safe_load(f.read())
        if loaded is None:
            return {}
        if not isinstance(loaded, dict):
            raise ValueError(f'config file {filename} must hold a mapping of keys to values')
        return loaded

    def save(self, directory):
        """Echo the resolved config as ``config.json`` in ``directory``."""
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, 'config.json')
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            json.dump({'command': self.command, **self.opt}, f, indent=4, sort_keys=True)
            f.write('\n')
        return path

    def __setitem__(self, key, value):
        if not isinstance(key, str):
            raise TypeError("index must be a str.")
        self.opt[key] = value

    def __getitem__(self, item):
        if item in self.opt:
            return self.opt[item]
        else:
            return None

    def get(self, item, default=None):
        """Get value of corresponding item in config

        Args:
            item (str): key to query in config
            default (optional): default value for item if not found in config. Defaults to None.

        Returns:
            value of corresponding item in config

        """
        if item in self.opt:
            return self.opt[item]
        else:
            return default

    def __contains__(self, key):
        if not isinstance(key, str):
            raise TypeError("index must be a str.")
        return key in self.opt

    def __str__(self):
        return str(self.opt)

    def __repr__(self):
        return self.__str__()
