"""``python -m secondkind``."""
from .cli import main

raise SystemExit(main())
