# Unit tests for extdim
