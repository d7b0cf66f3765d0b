#include "tnl/ideal.hpp"
