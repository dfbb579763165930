import logging

from COMMON.Config import Settings

_settings = Settings.from_env()

logging.basicConfig(
    level=getattr(logging, _settings.log_level, logging.WARNING),
    format="%(asctime)s [%(threadName)s] %(levelname)s: %(message)s",
)
logger = logging.getLogger("superctrl")
