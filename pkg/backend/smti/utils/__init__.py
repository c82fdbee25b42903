# Utils
