import sys

from sharpsens.cli.main import main


sys.exit(main())
