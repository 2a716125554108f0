# @Time   : 2026/10/17
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

import sys

from srslab.cli import main

if __name__ == '__main__':
    # same arguments and exit codes as the ``srslab`` command
    sys.exit(main(sys.argv[1:]))
