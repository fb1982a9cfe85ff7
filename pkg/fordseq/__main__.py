import sys

from fordseq.cli import main

sys.exit(main())
