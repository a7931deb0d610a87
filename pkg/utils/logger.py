"""
Logging configuration for the application
"""

import logging
import logging.handlers

from config import AppSettings


def setup_logging(verbose: bool = False, log_to_file: bool = True) -> logging.Logger:
    """Setup application logging with file and console handlers"""
    root_logger = logging.getLogger()
    # Repeated calls (tests, several CLI runs in one process) must not stack handlers
    for handler in list(root_logger.handlers):
        if getattr(handler, "_toolkit_handler", False):
            root_logger.removeHandler(handler)
            handler.close()

    # Create formatter
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    if log_to_file:
        AppSettings.ensure_directories()
        # Create file handler with rotation
        file_handler = logging.handlers.RotatingFileHandler(
            AppSettings.LOG_DIR / "toolkit.log",
            maxBytes=5*1024*1024,  # 5MB
            backupCount=5
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.INFO)
        file_handler._toolkit_handler = True
        root_logger.addHandler(file_handler)

    # Console goes to stderr so reports on stdout stay byte-identical
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler.setLevel(logging.INFO if verbose else logging.WARNING)
    console_handler._toolkit_handler = True
    root_logger.addHandler(console_handler)

    root_logger.setLevel(logging.INFO)
    root_logger.info("="*50)
    root_logger.info(f"Starting {AppSettings.APP_NAME} v{AppSettings.APP_VERSION}")
    root_logger.info("="*50)

    return root_logger
