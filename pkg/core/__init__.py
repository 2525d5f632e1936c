# Core module: logging, configuration, errors and registries
