import sys

from fractal_fidelity.cli import main

sys.exit(main())
