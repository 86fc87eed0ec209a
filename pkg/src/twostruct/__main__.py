import sys

from twostruct.cli import main

sys.exit(main())
