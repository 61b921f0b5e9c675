"""Package sources; see rackforge."""
