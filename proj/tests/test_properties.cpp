#include <doctest.h>
#include "qam/fock.hpp"
