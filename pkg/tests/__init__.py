# extdim tests
