import sys

from clinicalqa.cli import main

sys.exit(main())
