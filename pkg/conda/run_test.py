import pytest
import sys


sys.exit(pytest.main(['--pyargs', 'sharpsens']))
