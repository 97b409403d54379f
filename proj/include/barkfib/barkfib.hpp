#pragma once

#include <barkfib/sl2z.hpp>
#include <barkfib/kodaira.hpp>
#include <barkfib/splitting.hpp>
#include <barkfib/crust.hpp>
#include <barkfib/subord.hpp>
#include <barkfib/localmodel.hpp>
#include <barkfib/io.hpp>
