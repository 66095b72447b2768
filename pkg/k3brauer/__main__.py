import sys

from k3brauer import cli


sys.exit(cli.main())
