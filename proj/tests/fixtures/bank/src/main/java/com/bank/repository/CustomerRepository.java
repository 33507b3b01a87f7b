package com.bank.repository;

import com.bank.model.Customer;

public class CustomerRepository extends BaseRepository<Customer> {
    @Override
    protected long idOf(Customer row) {
        return row.getId();
    }

    public Object customerMapper() {
        return null;
    }
}
