"""
Django settings for the zmatroid-faces project.

The project has no web surface and no database: Django provides the command
runner (manage.py), configuration, translations and the test runner.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/
"""

from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config("SECRET_KEY", default="zmatroid-faces-development-key")

DEBUG = config("DEBUG", cast=bool, default=False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "intlin",
    "poly",
    "zmatroid",
    "torsion_poset",
    "facering",
    "cli",
]

# Nothing is persisted: every object is recomputed from the realization file.
DATABASES = {}


# Computation limits

# Subsets are enumerated exhaustively, so n is capped.
ZMATROID_MAX_GROUND_SET = config("ZMATROID_MAX_GROUND_SET", cast=int, default=12)

ZMATROID_SERIES_TERMS = config("ZMATROID_SERIES_TERMS", cast=int, default=20)

ZMATROID_PROFILE_CACHE = config("ZMATROID_PROFILE_CACHE", cast=int, default=4096)


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOG_LEVEL = config("LOG_LEVEL", default="WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in INSTALLED_APPS
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en"

USE_I18N = True

LANGUAGES = [
    ("en", "English"),
]
