import sys

from pcurvature.cli import main

sys.exit(main())
