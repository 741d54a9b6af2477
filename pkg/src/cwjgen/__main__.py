import sys

from .cli import gen_main

sys.exit(gen_main())
