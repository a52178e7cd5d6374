# Integration tests for extdim
