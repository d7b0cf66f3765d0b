#include "tnl/limits.hpp"
