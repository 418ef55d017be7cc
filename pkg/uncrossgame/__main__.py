import sys

from .cli.cli_main import main


sys.exit(main())
