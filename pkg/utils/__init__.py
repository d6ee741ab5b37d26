# Utils module for the Krull-Schmidt engine
