# SMTI solver
