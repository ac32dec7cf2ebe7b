from saddle_dynamics.cli import main

raise SystemExit(main())
