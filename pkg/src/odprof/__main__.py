from odprof.cli import main
import sys
sys.exit(main())
