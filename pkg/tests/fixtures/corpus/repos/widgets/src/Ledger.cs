/// licensed under the apache license, see the license file
using System;

namespace Fixture
{
    /* The test fails with a timeout error on windows. Copyright notice must be retained in redistributed software. */
    public class Ledger
    {
        private string url = "http://example.com//path";
        private string verbatim = @"C:\temp\// not a comment";

        // bug in error handling raises an exception on save
        public string Describe(int n)
        {
            var s = $"{n} items /* not a comment */";
            return s + url + verbatim;  // warning about an unhandled error in the worker thread
        }
    }
}
