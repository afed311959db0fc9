import sys

from modsm.cli.main import main

sys.exit(main())
