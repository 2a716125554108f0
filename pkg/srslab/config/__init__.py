# -*- encoding: utf-8 -*-
# @Time    :   2026/10/16
# @Author  :   SRSLab Team

"""Config module which resolves the parameters of every command.

Attributes:
    ROOT_PATH (str): root of the repository.
    SAVE_PATH (str): default directory of command outputs.
    LOG_PATH (str): default directory of log files.
"""

import os
from os.path import dirname, realpath

ROOT_PATH = dirname(dirname(dirname(realpath(__file__))))
SAVE_PATH = os.path.join(ROOT_PATH, 'save')
LOG_PATH = os.path.join(ROOT_PATH, 'log')

from .config import COMMAND_DEFAULTS, GLOBAL_DEFAULTS, Config
