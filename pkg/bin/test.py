#!/usr/bin/env python
import sys

import pytest


sys.exit(pytest.main(sys.argv[1:] or ['twotime']))
