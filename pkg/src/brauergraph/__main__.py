import sys

from brauergraph.cli import main

sys.exit(main())
