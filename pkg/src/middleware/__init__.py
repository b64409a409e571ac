# Middleware module for the tropical workbench
