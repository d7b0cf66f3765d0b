#include "tnl/experiments.hpp"
