#include "tnl/projective.hpp"
