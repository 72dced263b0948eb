import sys

from depscore.cli import main

sys.exit(main())
