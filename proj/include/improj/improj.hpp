// Umbrella header.
#ifndef IMPROJ_IMPROJ_HPP
#define IMPROJ_IMPROJ_HPP

#include "asymptotics.hpp"
#include "geometry.hpp"
#include "oracle.hpp"
#include "parse.hpp"
#include "realroots.hpp"
#include "stability.hpp"

#endif
