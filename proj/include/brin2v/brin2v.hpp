#pragma once

#include "brin2v/words.hpp"
#include "brin2v/dyadic.hpp"
#include "brin2v/pattern.hpp"
#include "brin2v/forest.hpp"
#include "brin2v/pi_monoid.hpp"
#include "brin2v/fractions.hpp"
#include "brin2v/two_v.hpp"
#include "brin2v/presentations.hpp"
#include "brin2v/suites.hpp"
#include "brin2v/json_io.hpp"
#include "brin2v/render.hpp"
