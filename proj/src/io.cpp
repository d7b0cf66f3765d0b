#include "tnl/io.hpp"
