#pragma once

#include "closure.hpp"
#include "errors.hpp"
#include "extensions.hpp"
#include "fixpoints.hpp"
#include "stallings.hpp"
#include "whitehead.hpp"
#include "words.hpp"
